#include "linepat/cubing.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "linepat/parallel.hpp"
#include "linepat/union_find.hpp"

namespace lp {

std::size_t OrientationHash::operator()(const Orientation& o) const noexcept {
    std::size_t h = o.size();
    for (auto w : o.words()) h = (h ^ static_cast<std::size_t>(w)) * 0x100000001b3ULL + (h >> 29);
    return h;
}

// ---- window ---------------------------------------------------------------------

namespace {

bool meets(const Subtree& A, const Subtree& B) {
    const Subtree& small = A.size() <= B.size() ? A : B;
    const Subtree& big = A.size() <= B.size() ? B : A;
    for (const auto& v : small.vertices())
        if (big.contains(v)) return true;
    return false;
}

// Side of S_j \ S_i relative to S_i, for non-crossing i, j.
int side_away(const LinePattern& P, const CutSet& Si, const CutSet& Sj) {
    if (!meets(Si.pruned_core(), Sj.pruned_core())) return Si.side_of_vertex(Sj.pruned_core().vertices().front());
    for (const auto& l : Sj.lines())
        if (!Si.contains(l)) return Si.side_of_line(P, l);
    throw Error(Errc::Internal, "nested cut sets in the window");
}

}  // namespace

Window instances_in_window(const LinePattern& P, const Catalog& catalog, int radius, bool all, int threads) {
    std::vector<int> use;
    for (const auto& o : catalog.orbits)
        if (all || o.indecomposable) use.push_back(o.id);
    std::vector<Instance> found;
    if (!use.empty()) found = translates_meeting(P, catalog, Subtree::ball(Word(), radius, P.rank()), use);
    return make_window(P, std::move(found), radius, threads);
}

Window make_window(const LinePattern& P, std::vector<Instance> instances, int radius, int threads) {
    Window W;
    W.radius = radius;
    W.instances = std::move(instances);
    const std::size_t N = W.instances.size();
    W.crossing.assign(N, std::vector<char>(N, 0));
    W.away.assign(N, std::vector<std::int8_t>(N, -1));
    parallel_for(N, threads, [&](std::size_t i) {
        const CutSet& Si = W.instances[i].cut;
        for (std::size_t j = 0; j < N; ++j) {
            if (i == j) continue;
            const CutSet& Sj = W.instances[j].cut;
            if (meets(Si.pruned_core(), Sj.pruned_core()) && crosses(P, Si, Sj)) {
                W.crossing[i][j] = 1;
                continue;
            }
            W.away[i][j] = static_cast<std::int8_t>(side_away(P, Si, Sj));
        }
    });
    // crossing is symmetric for minimal cut sets
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (W.crossing[i][j] && !W.crossing[j][i])
                throw Error(Errc::Internal, "crossing relation is not symmetric");
    for (int s = 0; s < 2; ++s) W.want[s].assign(N, Orientation(N));
    W.target.assign(N, Orientation(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            if (i == j || W.crossing[i][j]) continue;
            W.want[W.away[i][j]][i].set(j, 1);
            W.target[i].set(j, W.away[j][i]);
        }
    return W;
}

namespace {

// For j in want[s][i], o_j must equal away[j][i].
bool rows_ok(const Orientation& o, const Orientation& want, const Orientation& target) {
    const auto& a = o.words();
    const auto& w = want.words();
    const auto& t = target.words();
    for (std::size_t k = 0; k < a.size(); ++k)
        if ((a[k] ^ t[k]) & w[k]) return false;
    return true;
}

}  // namespace

bool Window::consistent(const Orientation& o) const {
    // forbidden: o_i = 1 - away[i][j] together with o_j = 1 - away[j][i]
    for (std::size_t i = 0; i < size(); ++i)
        if (!rows_ok(o, want[1 - o.get(i)][i], target[i])) return false;
    return true;
}

bool Window::can_flip(const Orientation& o, std::size_t i) const {
    return rows_ok(o, want[o.get(i)][i], target[i]);
}

bool Window::can_flip_slow(const Orientation& o, std::size_t i) const {
    Orientation f = o;
    f.flip(i);
    for (std::size_t j = 0; j < size(); ++j) {
        if (j == i || crossing[i][j]) continue;
        if (f.get(i) == 1 - away[i][j] && f.get(j) == 1 - away[j][i]) return false;
    }
    return true;
}

// ---- bad triples ----------------------------------------------------------------

std::vector<Letter> ray_letters(Letter d, int rank, std::size_t length) {
    std::vector<Letter> out;
    if (length == 0) return out;
    out.push_back(d);
    Letter x{}, y{};
    for (int c = 0; c < 2 * rank; ++c)
        if (Letter{static_cast<std::uint8_t>(c)} != d.inv()) {
            x = Letter{static_cast<std::uint8_t>(c)};
            break;
        }
    for (int c = 0; c < 2 * rank; ++c) {
        Letter z{static_cast<std::uint8_t>(c)};
        if (z != x && z != x.inv()) {
            y = z;
            break;
        }
    }
    for (std::size_t run = 1; out.size() < length; ++run) {
        out.push_back(x);
        for (std::size_t k = 0; k < run && out.size() < length; ++k) out.push_back(y);
    }
    out.resize(length);
    return out;
}

Word ray_vertex(const Word& anchor, Letter d, int rank, std::size_t length) {
    Word v = anchor;
    for (Letter x : ray_letters(d, rank, length)) v = v.times(x);
    if (tree_distance(anchor, v) != static_cast<int>(length)) throw Error(Errc::RayHitsLine, "ray backtracks");
    return v;
}

namespace {

void check_triple(const BadTriple& t) {
    if (t.dirs[0] == t.dirs[1] || t.dirs[0] == t.dirs[2] || t.dirs[1] == t.dirs[2])
        throw Error(Errc::InvalidArgument, "bad triple needs three distinct directions");
}

// Majority side of the three rays when the anchor lies in the pruned core.
int side_inside(const CutSet& S, const BadTriple& t, int rank) {
    const std::size_t T = static_cast<std::size_t>(S.pruned_core().diameter() + 2);
    int votes = 0;
    for (Letter d : t.dirs) votes += S.side_of_vertex(ray_vertex(t.anchor, d, rank, T));
    return votes >= 2;
}

}  // namespace

// Outside the pruned core at most one ray heads back toward it; the other two
// stay in the anchor's complementary component, so the vote is the anchor's side.
Orientation vertex_from_bad_triple(const Window& W, const BadTriple& t, int rank) {
    check_triple(t);
    Orientation o(W.size());
    for (std::size_t i = 0; i < W.size(); ++i) {
        const CutSet& S = W.instances[i].cut;
        o.set(i, S.pruned_core().contains(t.anchor) ? side_inside(S, t, rank) : S.side_of_vertex(t.anchor));
    }
    return o;
}

std::vector<BadTriple> seeds_in_ball(int radius, int rank) {
    std::vector<BadTriple> out;
    const int n2 = 2 * rank;
    const Subtree ball = Subtree::ball(Word(), radius, rank);
    for (const auto& v : ball.vertices())
        for (int a = 0; a < n2; ++a)
            for (int b = a + 1; b < n2; ++b)
                for (int c = b + 1; c < n2; ++c) {
                    BadTriple t;
                    t.anchor = v;
                    t.dirs[0] = Letter{static_cast<std::uint8_t>(a)};
                    t.dirs[1] = Letter{static_cast<std::uint8_t>(b)};
                    t.dirs[2] = Letter{static_cast<std::uint8_t>(c)};
                    out.push_back(t);
                }
    return out;
}

// ---- the complex ------------------------------------------------------------------

CubeComplex build_skeleton(const Window& W, const std::vector<BadTriple>& seeds, int rank, std::size_t vertex_cap,
                           int threads) {
    CubeComplex C;
    const std::size_t N = W.size();
    // orientation away from the anchor's own cores is shared by all its triples
    std::map<Word, std::vector<std::size_t>> by_anchor;
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        check_triple(seeds[k]);
        by_anchor[seeds[k].anchor].push_back(k);
    }
    std::vector<const std::vector<std::size_t>*> groups;
    for (const auto& [a, ks] : by_anchor) groups.push_back(&ks);
    std::vector<Orientation> seed_orient(seeds.size());
    parallel_for(groups.size(), threads, [&](std::size_t g) {
        const Word& anchor = seeds[groups[g]->front()].anchor;
        Orientation base(N);
        std::vector<std::size_t> inside;
        for (std::size_t i = 0; i < N; ++i) {
            const CutSet& S = W.instances[i].cut;
            if (S.pruned_core().contains(anchor)) inside.push_back(i);
            else base.set(i, S.side_of_vertex(anchor));
        }
        for (std::size_t k : *groups[g]) {
            seed_orient[k] = base;
            for (std::size_t i : inside) seed_orient[k].set(i, side_inside(W.instances[i].cut, seeds[k], rank));
        }
    });
    auto intern = [&](const Orientation& o, int seed) {
        auto [it, fresh] = C.index.emplace(o, static_cast<int>(C.vertices.size()));
        if (fresh) {
            C.vertices.push_back(o);
            C.seed_of.push_back(seed);
            C.seed_anchor.push_back(seed >= 0 ? seeds[seed].anchor : Word());
            C.adj.emplace_back();
        } else if (seed >= 0 && C.seed_of[it->second] < 0) {
            C.seed_of[it->second] = seed;
            C.seed_anchor[it->second] = seeds[seed].anchor;
        }
        return it->second;
    };
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        if (!W.consistent(seed_orient[k])) throw Error(Errc::Internal, "bad triple gave an inconsistent orientation");
        intern(seed_orient[k], static_cast<int>(k));
    }
    for (std::size_t v = 0; v < C.vertices.size(); ++v) {
        if (C.vertices.size() > vertex_cap) {
            C.truncated = true;
            break;
        }
        for (std::size_t i = 0; i < N; ++i) {
            if (!W.can_flip(C.vertices[v], i)) continue;
            Orientation f = C.vertices[v];
            f.flip(i);
            const int w = intern(f, -1);
            if (static_cast<int>(v) < w) {
                C.edges.push_back({static_cast<int>(v), w});
                C.edge_coord.push_back(static_cast<int>(i));
                C.adj[v].push_back(static_cast<int>(C.edges.size() - 1));
                C.adj[w].push_back(static_cast<int>(C.edges.size() - 1));
            }
        }
    }
    C.max_cube_dim = C.edges.empty() ? 0 : 1;
    return C;
}

namespace {

int neighbour(const CubeComplex& C, int v, int coord) {
    for (int e : C.adj[v])
        if (C.edge_coord[e] == coord) {
            const auto [a, b] = C.edges[e];
            return a == v ? b : a;
        }
    return -1;
}

// Grow cubes at v over increasing coordinate sets; corners[mask] is the vertex
// reached by flipping the coordinates selected by mask.
void grow(const CubeComplex& C, int v, const std::vector<int>& coords, std::size_t from, std::vector<int>& chosen,
          std::vector<int>& corners, int max_dim, int& best) {
    best = std::max(best, static_cast<int>(chosen.size()));
    if (static_cast<int>(chosen.size()) == max_dim) return;
    for (std::size_t k = from; k < coords.size(); ++k) {
        const int c = coords[k];
        const std::size_t m = corners.size();
        std::vector<int> next(corners);
        next.resize(2 * m);
        bool ok = true;
        for (std::size_t mask = 0; mask < m && ok; ++mask) {
            next[m + mask] = neighbour(C, corners[mask], c);
            ok = next[m + mask] >= 0;
        }
        if (!ok) continue;
        chosen.push_back(c);
        grow(C, v, coords, k + 1, chosen, next, max_dim, best);
        chosen.pop_back();
    }
}

}  // namespace

void fill_cubes(CubeComplex& C, const Window& W, int max_dim) {
    (void)W;
    C.squares.clear();
    C.square_coords.clear();
    int best = C.edges.empty() ? 0 : 1;
    for (int v = 0; v < static_cast<int>(C.vertices.size()); ++v) {
        std::vector<int> coords;
        for (int e : C.adj[v]) coords.push_back(C.edge_coord[e]);
        std::sort(coords.begin(), coords.end());
        for (std::size_t a = 0; a < coords.size(); ++a)
            for (std::size_t b = a + 1; b < coords.size(); ++b) {
                const int i = coords[a], j = coords[b];
                const int vi = neighbour(C, v, i), vj = neighbour(C, v, j);
                const int vij = neighbour(C, vi, j);
                if (vij < 0 || neighbour(C, vj, i) != vij) continue;
                if (std::min({vi, vj, vij}) < v) continue;  // count each square once
                C.squares.push_back({v, vi, vj, vij});
                C.square_coords.push_back({i, j});
            }
        if (max_dim > 2 && coords.size() >= 3) {
            std::vector<int> chosen, corners{v};
            grow(C, v, coords, 0, chosen, corners, max_dim, best);
        }
    }
    if (!C.squares.empty()) best = std::max(best, 2);
    C.max_cube_dim = best;
}

std::vector<std::vector<char>> hyperplane_crossings(const CubeComplex& C, std::size_t n) {
    std::vector<std::vector<char>> out(n, std::vector<char>(n, 0));
    for (auto [i, j] : C.square_coords) out[i][j] = out[j][i] = 1;
    return out;
}

bool is_tree(const CubeComplex& C) {
    if (!C.squares.empty()) return false;
    UnionFind uf(static_cast<int>(C.vertices.size()));
    for (auto [a, b] : C.edges)
        if (!uf.unite(a, b)) return false;
    return true;
}

// ---- diagnostics ------------------------------------------------------------------

namespace {

std::vector<int> bfs_from(const CubeComplex& C, const std::vector<int>& sources) {
    std::vector<int> dist(C.vertices.size(), -1);
    std::deque<int> q;
    for (int s : sources)
        if (dist[s] < 0) dist[s] = 0, q.push_back(s);
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int e : C.adj[v]) {
            auto [a, b] = C.edges[e];
            int w = a == v ? b : a;
            if (dist[w] < 0) dist[w] = dist[v] + 1, q.push_back(w);
        }
    }
    return dist;
}

std::vector<std::vector<int>> carriers(const CubeComplex& C, std::size_t n) {
    std::vector<std::set<int>> sets(n);
    for (std::size_t e = 0; e < C.edges.size(); ++e) {
        sets[C.edge_coord[e]].insert(C.edges[e].first);
        sets[C.edge_coord[e]].insert(C.edges[e].second);
    }
    std::vector<std::vector<int>> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i].assign(sets[i].begin(), sets[i].end());
    return out;
}

}  // namespace

QIReport qi_diagnostics(const LinePattern& P, const CubeComplex& C, const Window& W, int edge_radius) {
    QIReport r;
    const std::size_t N = W.size();
    const auto carry = carriers(C, N);
    const auto cross = hyperplane_crossings(C, N);
    for (std::size_t i = 0; i < N; ++i) {
        int k = 0;
        for (std::size_t j = 0; j < N; ++j) k += cross[i][j];
        const int size = static_cast<int>(carry[i].size());
        r.max_neighbourhood = std::max(r.max_neighbourhood, size);
        if (k < 30 && size > (1 << (k + 1))) ++r.bound_violations;
    }

    // tree edges with an edge cut set instance
    std::vector<std::pair<TreeEdge, int>> tree_edges;
    for (std::size_t i = 0; i < N; ++i) {
        const CutSet& S = W.instances[i].cut;
        const auto& vs = S.pruned_core().vertices();
        if (vs.size() != 2) continue;
        const TreeEdge e = TreeEdge::between(vs[0], vs[1]);
        const auto ls = P.lines_through_edge(e);
        if (LineSet(ls.begin(), ls.end()) != S.lines()) continue;
        if (static_cast<int>(vs[0].size()) > edge_radius || static_cast<int>(vs[1].size()) > edge_radius) continue;
        if (carry[i].empty()) continue;
        tree_edges.push_back({e, static_cast<int>(i)});
    }
    std::map<int, int> max_dx_at;
    for (std::size_t a = 0; a < tree_edges.size(); ++a) {
        const auto dist = bfs_from(C, carry[tree_edges[a].second]);
        for (std::size_t b = a + 1; b < tree_edges.size(); ++b) {
            int dx = -1;
            for (int v : carry[tree_edges[b].second])
                if (dist[v] >= 0 && (dx < 0 || dist[v] < dx)) dx = dist[v];
            if (dx < 0) continue;
            const TreeEdge& e = tree_edges[a].first;
            const TreeEdge& f = tree_edges[b].first;
            int dt = -1;
            for (const Word& u : {e.base, e.tip()})
                for (const Word& w : {f.base, f.tip()}) {
                    int d = tree_distance(u, w);
                    if (dt < 0 || d < dt) dt = d;
                }
            ++r.sampled_pairs;
            if (dt > dx) r.lower_bound_holds = false;
            if (dt > 0) r.c = std::max(r.c, static_cast<double>(dx) / dt);
            max_dx_at[dt] = std::max(max_dx_at[dt], dx);
        }
    }
    int prev = -1;
    for (const auto& [dt, dx] : max_dx_at) {
        if (dx < prev) r.monotone = false;
        prev = dx;
    }
    return r;
}

CubingChecks check_complex(const LinePattern& P, const CubeComplex& C, const Window& W) {
    (void)P;
    CubingChecks ck;
    const std::size_t N = W.size();
    for (const auto& o : C.vertices) ck.inconsistent_vertices += !W.consistent(o);
    for (std::size_t e = 0; e < C.edges.size(); ++e) {
        const auto& a = C.vertices[C.edges[e].first].words();
        const auto& b = C.vertices[C.edges[e].second].words();
        int diff = 0;
        for (std::size_t k = 0; k < a.size(); ++k) diff += __builtin_popcountll(a[k] ^ b[k]);
        const int c = C.edge_coord[e];
        if (diff != 1 || C.vertices[C.edges[e].first].get(c) == C.vertices[C.edges[e].second].get(c)) ++ck.bad_edges;
    }
    const std::size_t sample = std::min<std::size_t>(C.vertices.size(), 400);
    for (std::size_t v = 0; v < sample; ++v)
        for (std::size_t i = 0; i < N; ++i)
            ck.flip_rule_mismatches += W.can_flip(C.vertices[v], i) != W.can_flip_slow(C.vertices[v], i);

    UnionFind uf(static_cast<int>(C.edges.size()));
    std::map<std::pair<int, int>, int> edge_of;
    for (std::size_t e = 0; e < C.edges.size(); ++e) edge_of[C.edges[e]] = static_cast<int>(e);
    auto eid = [&](int a, int b) { return edge_of.at({std::min(a, b), std::max(a, b)}); };
    for (const auto& s : C.squares) {
        uf.unite(eid(s[0], s[1]), eid(s[2], s[3]));
        uf.unite(eid(s[0], s[2]), eid(s[1], s[3]));
    }
    std::vector<std::set<int>> classes(N);
    for (std::size_t e = 0; e < C.edges.size(); ++e) classes[C.edge_coord[e]].insert(uf.find(static_cast<int>(e)));
    for (const auto& c : classes) ck.hyperplane_classes_off += c.size() > 1;

    const auto cross = hyperplane_crossings(C, N);
    for (std::size_t i = 0; i < N; ++i) {
        bool inside = true;
        for (const auto& v : W.instances[i].cut.pruned_core().vertices()) inside &= static_cast<int>(v.size()) <= W.radius;
        if (!inside) continue;
        ++ck.interior_instances;
        for (std::size_t j = 0; j < N; ++j) ck.crossing_mismatches += (cross[i][j] != 0) != (W.crossing[i][j] != 0);
    }
    return ck;
}

CubingSummary cubing_summary(const LinePattern& P, const Catalog& catalog, const CubingOptions& opts,
                             CubeComplex* keep, Window* keep_window) {
    CubingSummary s;
    int dobs = 0;
    for (const auto& o : catalog.orbits)
        if (opts.all_orbits || o.indecomposable) dobs = std::max(dobs, o.rep.pruned_core().diameter());
    s.radius = opts.radius >= 0 ? opts.radius : dobs + 2;
    s.interior_radius = std::max(0, s.radius - dobs - 1);
    Window W = instances_in_window(P, catalog, s.radius, opts.all_orbits, opts.threads);
    CubeComplex C = build_skeleton(W, seeds_in_ball(s.radius, P.rank()), P.rank(), 2'000'000, opts.threads);
    fill_cubes(C, W);
    s.instances = W.size();
    s.vertices = C.vertices.size();
    s.edges = C.edges.size();
    s.squares = C.squares.size();
    s.max_cube_dim = C.max_cube_dim;
    s.tree = is_tree(C);
    std::set<int> val;
    for (std::size_t v = 0; v < C.vertices.size(); ++v)
        if (C.seed_of[v] >= 0 && static_cast<int>(C.seed_anchor[v].size()) <= s.interior_radius)
            val.insert(static_cast<int>(C.adj[v].size()));
    s.interior_valences.assign(val.begin(), val.end());
    const auto cross = hyperplane_crossings(C, W.size());
    // every instance crossing one with pruned core in B(radius) meets that core,
    // so it is in the window and the degree is exact
    std::set<int> deg;
    std::map<std::size_t, std::set<int>> by_size;
    for (std::size_t i = 0; i < W.size(); ++i) {
        bool inside = true;
        for (const auto& v : W.instances[i].cut.pruned_core().vertices())
            inside &= static_cast<int>(v.size()) <= s.radius;
        if (!inside) continue;
        const int d = static_cast<int>(std::count(cross[i].begin(), cross[i].end(), 1));
        deg.insert(d);
        by_size[W.instances[i].cut.size()].insert(d);
    }
    s.crossing_degrees.assign(deg.begin(), deg.end());
    for (const auto& [k, v] : by_size) s.crossing_degrees_by_size[k].assign(v.begin(), v.end());
    s.qi = qi_diagnostics(P, C, W, std::max(1, s.radius - 1));
    s.checks = check_complex(P, C, W);
    if (keep) *keep = std::move(C);
    if (keep_window) *keep_window = std::move(W);
    return s;
}

std::string cubing_dot(const CubeComplex& C, const std::string& name) {
    std::ostringstream os;
    os << "graph \"" << name << "\" {\n  node [shape=point];\n";
    for (std::size_t v = 0; v < C.vertices.size(); ++v) os << "  v" << v << ";\n";
    for (std::size_t e = 0; e < C.edges.size(); ++e)
        os << "  v" << C.edges[e].first << " -- v" << C.edges[e].second << " [label=\"" << C.edge_coord[e] << "\"];\n";
    os << "}\n";
    return os.str();
}

// ---- classification -----------------------------------------------------------------

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Disconnected: return "Disconnected";
        case Verdict::HasCutPoint: return "HasCutPoint";
        case Verdict::HasCutPair: return "HasCutPair";
        case Verdict::Circle: return "Circle";
        case Verdict::Rigid: return "Rigid";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::Rigid: return 0;
        case Verdict::Disconnected: return 2;
        case Verdict::HasCutPoint: return 3;
        case Verdict::HasCutPair: return 4;
        case Verdict::Circle: return 5;
        case Verdict::Inconclusive: return 64;
    }
    return 1;
}

Classification classify(const LinePattern& P, const ClassifyOptions& opts) {
    Classification out;
    out.connectivity = decomposition_connectivity(P, opts.threads);
    out.trace = out.connectivity.trace;
    out.minimal = out.trace.final_pattern;
    if (!out.connectivity.connected) {
        out.verdict = Verdict::Disconnected;
        return out;
    }
    const LinePattern& M = out.minimal;
    const WhGraph star = wh_at_vertex(M, Word());
    if (!cut_vertices(star).empty()) {
        out.verdict = Verdict::Inconclusive;
        out.notes.push_back("minimal Whitehead graph still has a cut vertex");
        return out;
    }
    bool circle = true;
    for (const auto& d : star.nodes()) circle &= star.valence(d) == 2;
    if (circle) {
        out.verdict = Verdict::Circle;
        out.notes.push_back("decomposition space is a circle; all circle patterns are equivalent to the abAB pattern");
        return out;
    }
    out.cut_point = has_cut_point(M);
    if (out.cut_point) {
        out.verdict = Verdict::HasCutPoint;
        return out;
    }
    out.cut_pairs = detect_cut_pairs(M, opts.depth_cap);
    if (out.cut_pairs->kind == CutPairResult::Kind::Witness) {
        out.verdict = Verdict::HasCutPair;
        out.notes.push_back("pattern is not rigid; F has infinite index in the pattern-preserving quasi-isometry group");
        return out;
    }
    if (out.cut_pairs->kind == CutPairResult::Kind::Inconclusive) {
        out.verdict = Verdict::Inconclusive;
        out.notes.push_back("cut pair search hit depth cap " + std::to_string(opts.depth_cap));
        return out;
    }
    out.verdict = Verdict::Rigid;
    if (!opts.build_catalog) return out;
    EnumerateOptions eo;
    eo.max_size = opts.max_size;
    eo.radius = opts.radius;
    eo.threads = opts.threads;
    eo.check_preconditions = false;
    out.catalog = enumerate(M, eo);
    for (const auto& w : out.catalog->warnings) out.notes.push_back(w);
    if (opts.build_cubing) {
        CubingOptions co;
        co.radius = opts.window_radius;
        co.threads = opts.threads;
        out.cubing = cubing_summary(M, *out.catalog, co);
    }
    return out;
}

}  // namespace lp
