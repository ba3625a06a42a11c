#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "linepat/cutsets.hpp"
#include "linepat/union_find.hpp"

namespace lp {

const char* verdict_name(PeriodicVerdict v) {
    switch (v) {
        case PeriodicVerdict::NotCutSet: return "NotCutSet";
        case PeriodicVerdict::BadCutPair: return "BadCutPair";
        case PeriodicVerdict::CutPoint: return "CutPoint";
        case PeriodicVerdict::NotCutSegregated: return "NotCutSegregated";
    }
    return "?";
}

const char* kind_name(CutPairResult::Kind k) {
    switch (k) {
        case CutPairResult::Kind::NoCutPairs: return "NoCutPairs";
        case CutPairResult::Kind::Witness: return "CutPairWitness";
        case CutPairResult::Kind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

void require_reduced(const LinePattern& P) {
    const WhGraph star = wh_at_vertex(P, Word());
    if (components(star).count != 1) throw Error(Errc::NotReduced, "Wh(*) is disconnected");
    if (!cut_vertices(star).empty()) throw Error(Errc::NotReduced, "Wh(*) has a cut vertex");
}

NodePartition finest_compatible_partition(const LinePattern& P, const CyclicWord& g) {
    const Word& w = g.word();
    const std::size_t L = w.size();
    if (L == 0) throw Error(Errc::IdentityElement, "g is the identity");
    std::vector<Word> X;
    for (std::size_t i = 0; i < L; ++i) X.push_back(w.prefix(i));
    const Direction e{Word(), w[L - 1].inv()};
    const Direction ge{w.prefix(L - 1), w[L - 1]};
    WhGraph G = delete_node(delete_node(wh_over(P, Subtree(X)), e), ge);
    const Components C = components(G);

    std::map<Line, int> at_e, at_ge;
    for (std::size_t i = 0; i < G.edges().size(); ++i) {
        const auto& ed = G.edges()[i];
        for (const WhEnd* end : {&ed.a, &ed.b}) {
            if (!end->loose) continue;
            if (end->at == e) at_e[ed.line] = C.edge_comp[i];
            if (end->at == ge) at_ge[ed.line] = C.edge_comp[i];
        }
    }
    const Word ginv = w.inverse();
    std::vector<std::pair<int, int>> pairs;  // (component at ge, component of the matching e end)
    for (const auto& [m, cm] : at_ge) {
        auto it = at_e.find(P.translate(ginv, m));
        if (it == at_e.end()) throw Error(Errc::Internal, "splicing map does not match the axis ends");
        pairs.emplace_back(cm, it->second);
    }

    UnionFind uf(C.count);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t j = i + 1; j < pairs.size(); ++j) {
                const auto [a1, b1] = pairs[i];
                const auto [a2, b2] = pairs[j];
                if (uf.find(a1) == uf.find(a2)) changed |= uf.unite(b1, b2);
                if (uf.find(b1) == uf.find(b2)) changed |= uf.unite(a1, a2);
            }
    }

    std::map<int, std::vector<Line>> by_root;
    for (const auto& [l, c] : at_e) by_root[uf.find(c)].push_back(l);
    NodePartition out;
    out.node = e;
    for (auto& [r, ls] : by_root) out.blocks.push_back(std::move(ls));
    std::sort(out.blocks.begin(), out.blocks.end());
    return out;
}

PeriodicClass classify_periodic(const LinePattern& P, const Word& g) {
    if (g.empty()) throw Error(Errc::IdentityElement, "g is the identity");
    require_reduced(P);
    PeriodicClass pc;
    pc.g = primitive_root(cyclic_reduce(g).core).root;
    pc.partition = finest_compatible_partition(P, pc.g);
    if (auto gi = P.generator_index(pc.g)) {
        pc.axis = P.canonicalize(*gi, Word());
        for (const auto& b : pc.partition.blocks)
            if (b.size() == 1 && b[0] == *pc.axis) pc.segregated = true;
    }
    const std::size_t n = pc.partition.blocks.size();
    if (n <= 1)
        pc.verdict = PeriodicVerdict::NotCutSet;
    else if (!pc.segregated)
        pc.verdict = PeriodicVerdict::BadCutPair;
    else if (n == 2)
        pc.verdict = PeriodicVerdict::NotCutSegregated;
    else
        pc.verdict = PeriodicVerdict::CutPoint;
    return pc;
}

std::optional<CyclicWord> has_cut_point(const LinePattern& P) {
    require_reduced(P);
    for (const auto& w : P.generators())
        if (classify_periodic(P, w.word()).verdict == PeriodicVerdict::CutPoint) return w;
    return std::nullopt;
}

// ---- cut pairs ----------------------------------------------------------------

namespace {

// Right extensions of a geodesic segment.  A state remembers the left node s,
// the right exit t, how the boundary half-edges group into components of the
// segment's Whitehead graph, which of those groups are a single free line,
// and how many components have already closed off (capped at 2).
struct HalfEdge {
    int entry;
    bool out;
};

struct RayState {
    std::uint8_t s = 0, t = 0, closed = 0;
    std::vector<std::uint8_t> labels;  // over H(s) then H(t)
    std::vector<std::uint8_t> free;    // per block

    int blocks() const { return static_cast<int>(free.size()); }
    int free_count() const { return static_cast<int>(std::count(free.begin(), free.end(), 1)); }
    int count() const { return blocks() + closed; }
    std::string key() const {
        std::string k{char(s), char(t), char(closed)};
        k.append(labels.begin(), labels.end());
        k.push_back('|');
        k.append(free.begin(), free.end());
        return k;
    }
};

class RayAutomaton {
public:
    explicit RayAutomaton(const LinePattern& P) : P_(P), E_(P.identity_crossings()), n2_(2 * P.rank()) {
        start_.resize(P.generators().size());
        for (int i = 0, acc = 0; i < static_cast<int>(P.generators().size()); ++i) {
            start_[i] = acc;
            acc += static_cast<int>(P.generator(i).size());
        }
        H_.assign(n2_, {});
        for (int k = 0; k < static_cast<int>(E_.size()); ++k) {
            H_[E_[k].in.code].push_back({k, false});
            H_[E_[k].out.code].push_back({k, true});
        }
    }

    int letters() const { return n2_; }

    RayState initial(int s, int t) const {
        const int E = static_cast<int>(E_.size());
        UnionFind uf(n2_ + E);
        for (int k = 0; k < E; ++k)
            for (Letter d : {E_[k].in, E_[k].out})
                if (d.code != s && d.code != t) uf.unite(n2_ + k, d.code);
        std::vector<int> boundary;
        for (int c : {s, t})
            for (const auto& h : H_[c]) boundary.push_back(n2_ + h.entry);
        RayState st;
        st.s = static_cast<std::uint8_t>(s);
        st.t = static_cast<std::uint8_t>(t);
        std::vector<int> roots = relabel(uf, boundary, st.labels);
        st.free.assign(roots.size(), 0);
        for (std::size_t b = 0; b < roots.size(); ++b) {
            int nodes = 0, entries = 0;
            for (int a = 0; a < n2_ + E; ++a) {
                if (uf.find(a) != roots[b]) continue;
                if (a < n2_) nodes += (a != s && a != t);
                else ++entries;
            }
            st.free[b] = nodes == 0 && entries == 1;
        }
        std::vector<int> rest;
        for (int a = 0; a < n2_ + E; ++a)
            if (a >= n2_ || (a != s && a != t)) rest.push_back(a);
        st.closed = static_cast<std::uint8_t>(std::min(2, closed_roots(uf, rest, roots)));
        return st;
    }

    RayState step(const RayState& st, int z) const {
        const int E = static_cast<int>(E_.size());
        const int nb = st.blocks();
        const int tbar = st.t ^ 1;
        auto node = [&](int c) { return nb + c; };
        auto entry = [&](int k) { return nb + n2_ + k; };
        UnionFind uf(nb + n2_ + E);
        for (int k = 0; k < E; ++k)
            for (Letter d : {E_[k].in, E_[k].out})
                if (d.code != tbar && d.code != z) uf.unite(entry(k), node(d.code));
        const std::size_t hs = H_[st.s].size();
        for (std::size_t i = 0; i < H_[st.t].size(); ++i) {
            const HalfEdge h = H_[st.t][i];
            const int p = partner(h);
            uf.unite(st.labels[hs + i], entry(p));
        }
        std::vector<int> boundary;
        for (std::size_t i = 0; i < hs; ++i) boundary.push_back(st.labels[i]);
        for (const auto& h : H_[z]) boundary.push_back(entry(h.entry));

        RayState out;
        out.s = st.s;
        out.t = static_cast<std::uint8_t>(z);
        std::vector<int> roots = relabel(uf, boundary, out.labels);
        out.free.assign(roots.size(), 0);
        for (std::size_t b = 0; b < roots.size(); ++b) {
            int old = 0, old_free = 0, nodes = 0, entries = 0;
            for (int a = 0; a < nb + n2_ + E; ++a) {
                if (uf.find(a) != roots[b]) continue;
                if (a < nb) {
                    ++old;
                    old_free += st.free[a];
                } else if (a < nb + n2_) {
                    const int c = a - nb;
                    nodes += (c != tbar && c != z);
                } else {
                    ++entries;
                }
            }
            out.free[b] = old == 1 && old_free == 1 && nodes == 0 && entries == 1;
        }
        std::vector<int> rest;
        for (int a = 0; a < nb + n2_ + E; ++a) {
            if (a >= nb && a < nb + n2_ && (a - nb == tbar || a - nb == z)) continue;
            rest.push_back(a);
        }
        out.closed = static_cast<std::uint8_t>(std::min(2, st.closed + closed_roots(uf, rest, roots)));
        return out;
    }

private:
    // The entry meeting half-edge h across the edge it points along.
    int partner(const HalfEdge& h) const {
        const auto& c = E_[h.entry];
        const int L = static_cast<int>(P_.generator(c.gen).size());
        const int base = start_[c.gen];
        return h.out ? base + (c.pos + 1) % L : base + (c.pos + L - 1) % L;
    }

    static std::vector<int> relabel(UnionFind& uf, const std::vector<int>& boundary, std::vector<std::uint8_t>& labels) {
        std::vector<int> roots;
        labels.clear();
        for (int a : boundary) {
            int r = uf.find(a);
            auto it = std::find(roots.begin(), roots.end(), r);
            if (it == roots.end()) {
                labels.push_back(static_cast<std::uint8_t>(roots.size()));
                roots.push_back(r);
            } else {
                labels.push_back(static_cast<std::uint8_t>(it - roots.begin()));
            }
        }
        return roots;
    }

    static int closed_roots(UnionFind& uf, const std::vector<int>& atoms, const std::vector<int>& open) {
        std::vector<int> seen;
        for (int a : atoms) {
            int r = uf.find(a);
            if (std::find(open.begin(), open.end(), r) != open.end()) continue;
            if (std::find(seen.begin(), seen.end(), r) == seen.end()) seen.push_back(r);
        }
        return static_cast<int>(seen.size());
    }

    const LinePattern& P_;
    const std::vector<Crossing>& E_;
    int n2_;
    std::vector<int> start_;
    std::vector<std::vector<HalfEdge>> H_;
};

struct Node {
    RayState st;
    int depth = 0;
    int parent = -1;
    std::uint8_t via = 0;
    std::vector<std::pair<int, std::uint8_t>> next;
};

bool bad(const RayState& st) { return st.count() - st.free_count() >= 2; }

// Tarjan over the bad states; returns cyclic SCCs.
std::vector<std::vector<int>> bad_cycles(const std::vector<Node>& nodes) {
    const int N = static_cast<int>(nodes.size());
    std::vector<int> index(N, -1), low(N, 0), stack;
    std::vector<char> on(N, 0);
    std::vector<std::vector<int>> out;
    int counter = 0;
    for (int root = 0; root < N; ++root) {
        if (index[root] >= 0 || !bad(nodes[root].st)) continue;
        // iterative Tarjan
        std::vector<std::pair<int, std::size_t>> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on[root] = 1;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < nodes[v].next.size()) {
                const int w = nodes[v].next[i++].first;
                if (!bad(nodes[w].st)) continue;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on[w] = 1;
                    call.push_back({w, 0});
                } else if (on[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const int vv = v;
            if (low[vv] == index[vv]) {
                std::vector<int> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on[w] = 0;
                    comp.push_back(w);
                } while (w != vv);
                bool cyclic = comp.size() > 1;
                for (const auto& [x, z] : nodes[vv].next) cyclic |= (x == vv);
                if (cyclic) {
                    std::sort(comp.begin(), comp.end());
                    out.push_back(std::move(comp));
                }
            }
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[vv]);
        }
    }
    return out;
}

// Letters of a shortest cycle through v inside comp.
std::vector<Letter> shortest_cycle(const std::vector<Node>& nodes, const std::vector<int>& comp, int v) {
    std::unordered_map<int, std::pair<int, std::uint8_t>> from;
    std::deque<int> q{v};
    auto in_comp = [&](int x) { return std::binary_search(comp.begin(), comp.end(), x); };
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (const auto& [y, z] : nodes[x].next) {
            if (!in_comp(y)) continue;
            if (y == v) {
                std::vector<Letter> seq{Letter{z}};
                for (int c = x; c != v; c = from[c].first) seq.push_back(Letter{from[c].second});
                std::reverse(seq.begin(), seq.end());
                return seq;
            }
            if (from.count(y)) continue;
            from[y] = {x, z};
            q.push_back(y);
        }
    }
    return {};
}

}  // namespace

CutPairResult detect_cut_pairs(const LinePattern& P, int depth_cap) {
    require_reduced(P);
    CutPairResult res;
    const WhGraph star = wh_at_vertex(P, Word());
    const auto& edges = star.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            WhGraph G = delete_lines(star, {edges[i].line, edges[j].line});
            if (components(G).count > 1) {
                res.kind = CutPairResult::Kind::Witness;
                res.two_lines = {edges[i].line, edges[j].line};
                res.how = "two-lines";
                return res;
            }
        }
    if (auto g = has_cut_point(P)) {
        res.kind = CutPairResult::Kind::Witness;
        res.g = *g;
        res.how = "generator";
        return res;
    }

    RayAutomaton A(P);
    std::vector<Node> nodes;
    std::unordered_map<std::string, int> id;
    std::deque<int> queue;
    auto intern = [&](RayState st, int depth, int parent, int via) {
        auto [it, fresh] = id.emplace(st.key(), static_cast<int>(nodes.size()));
        if (fresh) {
            nodes.push_back(Node{std::move(st), depth, parent, static_cast<std::uint8_t>(via), {}});
            queue.push_back(it->second);
        }
        return it->second;
    };
    const int n2 = A.letters();
    for (int s = 0; s < n2; ++s)
        for (int t = 0; t < n2; ++t) {
            if (s == t) continue;
            RayState st = A.initial(s, t);
            if (st.count() >= 2) intern(std::move(st), 0, -1, t);
        }
    constexpr std::size_t kStateCap = 2'000'000;
    bool truncated = false;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        if (nodes[v].depth >= depth_cap || nodes.size() > kStateCap) {
            truncated = true;
            continue;
        }
        const RayState cur = nodes[v].st;
        for (int z = 0; z < n2; ++z) {
            if (z == (cur.t ^ 1)) continue;
            RayState nx = A.step(cur, z);
            if (nx.count() < 2) continue;
            const int w = intern(std::move(nx), nodes[v].depth + 1, v, z);
            nodes[v].next.push_back({w, static_cast<std::uint8_t>(z)});
        }
        res.depth = std::max(res.depth, nodes[v].depth + 1);
    }
    res.states = nodes.size();

    const auto cycles = bad_cycles(nodes);
    if (cycles.empty()) {
        res.kind = truncated ? CutPairResult::Kind::Inconclusive : CutPairResult::Kind::NoCutPairs;
        res.how = truncated ? "depth cap" : "closure";
        return res;
    }

    std::optional<CyclicWord> best;
    constexpr std::size_t kMinePerComponent = 256;
    for (const auto& comp : cycles) {
        for (std::size_t i = 0; i < comp.size() && i < kMinePerComponent; ++i) {
            auto seq = shortest_cycle(nodes, comp, comp[i]);
            if (seq.empty()) continue;
            const Word loop = Word::from_reduced(seq);
            if (!is_cyclically_reduced(loop)) continue;
            const CyclicWord g = primitive_root(CyclicWord(loop)).root;
            if (best && !shortlex_less(g.word(), best->word())) continue;
            const auto v = classify_periodic(P, g.word()).verdict;
            if (v == PeriodicVerdict::BadCutPair || v == PeriodicVerdict::CutPoint) best = g;
        }
    }
    res.kind = CutPairResult::Kind::Witness;
    if (best) {
        res.g = best;
        res.how = "periodic";
        return res;
    }
    // No periodic confirmation: report the ray reaching the first bad cycle.
    const int v = cycles.front().front();
    std::vector<Letter> prefix;
    int c = v;
    for (; nodes[c].parent >= 0; c = nodes[c].parent) prefix.push_back(Letter{nodes[c].via});
    prefix.push_back(Letter{nodes[c].st.t});
    std::reverse(prefix.begin(), prefix.end());
    res.ray_start = Letter{nodes[c].st.s};
    res.loop_start = prefix.size();
    auto loop = shortest_cycle(nodes, cycles.front(), v);
    prefix.insert(prefix.end(), loop.begin(), loop.end());
    res.ray = Word::from_reduced(prefix);
    res.how = "ray";
    return res;
}

}  // namespace lp
