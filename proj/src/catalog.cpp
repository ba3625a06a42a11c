#include <algorithm>
#include <json.hpp>
#include <map>

#include "linepat/cutsets.hpp"
#include "linepat/parallel.hpp"
#include "linepat/union_find.hpp"

namespace lp {

namespace {

Letter letter_of(int c) { return Letter{static_cast<std::uint8_t>(c)}; }

// Fewest edges of Wh(*) minus node x whose removal splits the remaining nodes.
std::vector<int> leaf_costs(const LinePattern& P) {
    const WhGraph star = wh_at_vertex(P, Word());
    const int n2 = 2 * P.rank();
    std::vector<int> out(n2, 0);
    std::vector<std::pair<int, int>> ends;
    for (const auto& e : star.edges()) ends.push_back({e.a.at.letter.code, e.b.at.letter.code});
    for (int x = 0; x < n2; ++x) {
        std::vector<int> rest;
        for (int c = 0; c < n2; ++c)
            if (c != x) rest.push_back(c);
        int best = static_cast<int>(ends.size());
        const int m = static_cast<int>(rest.size());
        // rest[0] is always on side 0
        for (unsigned mask = 1; mask < (1u << (m - 1)); ++mask) {
            std::vector<int> side(n2, -1);
            side[rest[0]] = 0;
            for (int i = 1; i < m; ++i) side[rest[i]] = (mask >> (i - 1)) & 1u;
            int cut = 0;
            for (auto [a, b] : ends)
                if (a != x && b != x && side[a] != side[b]) ++cut;
            best = std::min(best, cut);
        }
        out[x] = best;
    }
    return out;
}

// Subtrees containing the identity, grown breadth first: each vertex decides
// its set of children once, so leaves are final as soon as they are decided.
class SubtreeSearch {
public:
    SubtreeSearch(int rank, int radius, int max_diameter, int budget, std::vector<int> cost)
        : rank_(rank), radius_(radius), diameter_(max_diameter), budget_(budget), cost_(std::move(cost)) {
        min_cost_ = *std::min_element(cost_.begin(), cost_.end());
    }

    std::vector<Subtree> run() {
        verts_ = {Word()};
        stems_ = {std::nullopt};
        queue_ = {0};
        recurse(0, 0);
        return std::move(out_);
    }

private:
    void recurse(std::size_t head, int spent) {
        if (head == queue_.size()) {
            Subtree K(verts_);
            const int d = K.diameter();
            if (d > diameter_) return;
            // anchor at a centre so each orbit is met a bounded number of times
            int ecc = 0;
            for (const auto& v : verts_) ecc = std::max(ecc, static_cast<int>(v.size()));
            if (ecc != (d + 1) / 2) return;
            out_.push_back(std::move(K));
            return;
        }
        const int vi = queue_[head];
        const Word v = verts_[vi];
        std::vector<Letter> kids;
        if (static_cast<int>(v.size()) < radius_)
            for (int c = 0; c < 2 * rank_; ++c) {
                Letter x = letter_of(c);
                if (!v.empty() && x == v.back().inv()) continue;
                kids.push_back(x);
            }
        const int pending = static_cast<int>(queue_.size() - head - 1);
        const unsigned subsets = 1u << kids.size();
        for (unsigned mask = 0; mask < subsets; ++mask) {
            const int nk = __builtin_popcount(mask);
            const bool is_root = vi == 0;
            int add = 0;
            if (!is_root && nk == 0) add = cost_[stems_[vi]->code];
            if (is_root && nk == 1) {
                for (std::size_t i = 0; i < kids.size(); ++i)
                    if (mask >> i & 1u) add = cost_[kids[i].code];
            }
            // every undecided vertex still hangs at least one leaf below it
            if (spent + add + (pending + nk) * min_cost_ > budget_ && !(is_root && nk == 0)) continue;
            if (is_root && nk == 0) {
                recurse(queue_.size(), spent);
                continue;
            }
            const std::size_t mark = verts_.size();
            for (std::size_t i = 0; i < kids.size(); ++i) {
                if (!(mask >> i & 1u)) continue;
                verts_.push_back(v.times(kids[i]));
                stems_.push_back(kids[i].inv());
                queue_.push_back(static_cast<int>(verts_.size() - 1));
            }
            recurse(head + 1, spent + add);
            verts_.resize(mark);
            stems_.resize(mark);
            queue_.resize(queue_.size() - nk);
        }
    }

    int rank_, radius_, diameter_, budget_, min_cost_ = 0;
    std::vector<int> cost_;
    std::vector<Word> verts_;
    std::vector<std::optional<Letter>> stems_;
    std::vector<int> queue_;
    std::vector<Subtree> out_;
};

// Two-colourings of Wh(K) with connected colour classes, at most b
// bichromatic edges, and both colours at every leaf.
std::vector<LineSet> bonds(const LinePattern& P, const Subtree& K, int b) {
    const WhGraph W = wh_over(P, K);
    const int N = static_cast<int>(W.nodes().size());
    std::vector<std::vector<std::pair<int, int>>> adj(N);  // (neighbour, edge)
    const auto& E = W.edges();
    for (int i = 0; i < static_cast<int>(E.size()); ++i) {
        int a = W.node_index(E[i].a.at), c = W.node_index(E[i].b.at);
        adj[a].push_back({c, i});
        adj[c].push_back({a, i});
    }
    // order nodes breadth first so partial cuts grow early
    std::vector<int> order, pos(N, -1);
    for (int s = 0; s < N; ++s) {
        if (pos[s] >= 0) continue;
        pos[s] = static_cast<int>(order.size());
        order.push_back(s);
        for (std::size_t q = order.size() - 1; q < order.size(); ++q)
            for (auto [y, e] : adj[order[q]])
                if (pos[y] < 0) pos[y] = static_cast<int>(order.size()), order.push_back(y);
    }
    std::vector<std::vector<int>> leaf_nodes;
    for (const auto& v : K.leaves(P.rank())) {
        std::vector<int> ns;
        for (int k = 0; k < N; ++k)
            if (W.nodes()[k].from == v) ns.push_back(k);
        leaf_nodes.push_back(std::move(ns));
    }

    std::vector<int> colour(N, -1);
    std::vector<LineSet> out;
    auto finish = [&]() {
        for (const auto& ns : leaf_nodes) {
            bool seen[2] = {false, false};
            for (int k : ns) seen[colour[k]] = true;
            if (!seen[0] || !seen[1]) return;
        }
        UnionFind uf(N);
        LineSet S;
        for (const auto& e : E) {
            int a = W.node_index(e.a.at), c = W.node_index(e.b.at);
            if (colour[a] == colour[c]) uf.unite(a, c);
            else S.insert(e.line);
        }
        std::set<int> roots;
        for (int k = 0; k < N; ++k) roots.insert(uf.find(k));
        if (roots.size() == 2) out.push_back(std::move(S));
    };
    auto go = [&](auto&& self, int i, int cut, bool used1) -> void {
        if (i == N) {
            if (used1) finish();
            return;
        }
        const int k = order[i];
        for (int c = 0; c < 2; ++c) {
            if (i == 0 && c == 1) continue;
            int add = 0;
            for (auto [y, e] : adj[k])
                if (colour[y] >= 0 && colour[y] != c) ++add;
            if (cut + add > b) continue;
            colour[k] = c;
            self(self, i + 1, cut + add, used1 || c == 1);
            colour[k] = -1;
        }
    };
    go(go, 0, 0, false);
    return out;
}

}  // namespace

int default_max_size(const LinePattern& P) {
    const WhGraph star = wh_at_vertex(P, Word());
    int best = 0;
    for (const auto& d : star.nodes()) best = std::max(best, star.valence(d));
    return best;
}

int default_radius(const LinePattern& P, int max_size) {
    std::size_t longest = 0;
    for (const auto& g : P.generators()) longest = std::max(longest, g.size());
    const int formula = 2 * static_cast<int>(longest) * std::max(0, max_size - 1);
    return std::min(formula, kDefaultRadiusCap);
}

Catalog enumerate(const LinePattern& P, int max_size, int radius, int threads) {
    EnumerateOptions o;
    o.max_size = max_size;
    o.radius = radius;
    o.threads = threads;
    return enumerate(P, o);
}

Catalog enumerate(const LinePattern& P, const EnumerateOptions& opts) {
    Catalog cat;
    cat.rank = P.rank();
    cat.pattern_text = P.describe();
    if (opts.check_preconditions) {
        if (has_cut_point(P)) throw Error(Errc::HasCutPoint, "the pattern has cut points");
        const auto cp = detect_cut_pairs(P);
        if (cp.kind == CutPairResult::Kind::Witness) throw Error(Errc::HasCutPair, "the pattern has cut pairs");
        if (cp.kind == CutPairResult::Kind::Inconclusive)
            cat.warnings.push_back("cut pair detection was inconclusive");
    }
    const int b = opts.max_size > 0 ? opts.max_size : default_max_size(P);
    std::size_t longest = 0;
    for (const auto& g : P.generators()) longest = std::max(longest, g.size());
    cat.max_size = b;
    cat.radius_formula = 2 * static_cast<int>(longest) * std::max(0, b - 1);
    cat.radius = opts.radius >= 0 ? opts.radius : default_radius(P, b);
    if (cat.radius < cat.radius_formula)
        cat.warnings.push_back("complete only up to pruned-core diameter " + std::to_string(cat.radius) +
                               " (formula gives " + std::to_string(cat.radius_formula) + ")");

    std::map<std::vector<Line>, std::pair<CutSet, bool>> found;  // key -> (rep, edge form)
    auto record = [&](CutSet cut, bool edge) {
        auto key = orbit_key(P, cut);
        const Word anchor_inv = [&] {
            for (const auto& x : cut.pruned_core().vertices()) {
                std::vector<Line> k;
                for (const auto& l : cut.lines()) k.push_back(P.translate(x.inverse(), l));
                std::sort(k.begin(), k.end());
                if (k == key) return x.inverse();
            }
            return Word();
        }();
        if (!found.count(key)) found.emplace(key, std::make_pair(cut.translate(P, anchor_inv), edge));
    };

    for (int i = 0; i < P.rank(); ++i) {
        const auto ls = P.lines_through_edge(TreeEdge{Word(), Letter::gen(i)});
        LineSet S(ls.begin(), ls.end());
        if (static_cast<int>(S.size()) > b || S.size() < 2) continue;
        auto m = is_minimal_cut_set(P, S, false);
        if (m.minimal) record(std::move(*m.cut), true);
    }

    const auto costs = leaf_costs(P);
    SubtreeSearch search(P.rank(), (cat.radius + 1) / 2, cat.radius, b, costs);
    const auto supports = search.run();
    std::vector<std::vector<CutSet>> per(supports.size());
    parallel_for(supports.size(), opts.threads, [&](std::size_t i) {
        const Subtree& K = supports[i];
        for (auto& S : bonds(P, K, b)) {
            if (S.size() < 2) continue;
            CutSet cut(P, std::move(S));
            if (!(cut.pruned_core() == K)) continue;
            if (cut.components() != 2 || !cut.lines_join()) continue;
            per[i].push_back(std::move(cut));
        }
    });
    for (auto& v : per)
        for (auto& c : v) record(std::move(c), false);

    std::vector<std::pair<std::vector<Line>, std::pair<CutSet, bool>>> sorted(found.begin(), found.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
        if (x.second.first.size() != y.second.first.size()) return x.second.first.size() < y.second.first.size();
        return x.first < y.first;
    });
    for (auto& [key, val] : sorted) {
        CatalogOrbit o;
        o.id = static_cast<int>(cat.orbits.size());
        o.rep = std::move(val.first);
        o.edge_cut = val.second;
        cat.max_observed_diameter = std::max(cat.max_observed_diameter, o.rep.pruned_core().diameter());
        cat.orbits.push_back(std::move(o));
    }

    std::vector<Decomposition> dec(cat.orbits.size());
    parallel_for(cat.orbits.size(), opts.threads,
                 [&](std::size_t i) { dec[i] = is_decomposable(P, cat.orbits[i].rep, cat); });
    for (std::size_t i = 0; i < cat.orbits.size(); ++i) cat.orbits[i].indecomposable = !dec[i].decomposable;

    std::vector<int> crossings(cat.orbits.size(), 0);
    parallel_for(cat.orbits.size(), opts.threads, [&](std::size_t i) {
        const CutSet& S = cat.orbits[i].rep;
        std::vector<int> same;
        for (const auto& o : cat.orbits)
            if (o.rep.size() == S.size()) same.push_back(o.id);
        for (const auto& inst : translates_meeting(P, cat, S.pruned_core(), same))
            if (!(inst.cut == S) && crosses(P, S, inst.cut)) ++crossings[i];
    });
    for (std::size_t i = 0; i < cat.orbits.size(); ++i) cat.orbits[i].crossings_within_catalog = crossings[i];
    return cat;
}

std::vector<Instance> translates_meeting(const LinePattern& P, const Catalog& catalog, const Subtree& region,
                                         const std::vector<int>& orbit_filter) {
    std::map<LineSet, Instance> seen;
    for (const auto& o : catalog.orbits) {
        if (!orbit_filter.empty() && std::find(orbit_filter.begin(), orbit_filter.end(), o.id) == orbit_filter.end())
            continue;
        for (const auto& v : region.vertices())
            for (const auto& x : o.rep.pruned_core().vertices()) {
                const Word h = v * x.inverse();
                LineSet moved;
                for (const auto& l : o.rep.lines()) moved.insert(P.translate(h, l));
                if (seen.count(moved)) continue;
                seen.emplace(std::move(moved), Instance{o.id, h, o.rep.translate(P, h)});
            }
    }
    std::vector<Instance> out;
    for (auto& [k, inst] : seen) out.push_back(std::move(inst));
    std::stable_sort(out.begin(), out.end(), [](const Instance& a, const Instance& b) { return a.orbit < b.orbit; });
    return out;
}

// ---- JSON --------------------------------------------------------------------------

using nlohmann::json;

std::string catalog_to_json(const LinePattern& P, const Catalog& catalog) {
    const Basis& B = P.basis();
    json j;
    std::vector<std::string> gens;
    for (const auto& g : P.generators()) gens.push_back(B.format(g.word()));
    j["pattern"] = gens;
    j["basis_rank"] = P.rank();
    j["basis"] = B.names();
    j["max_size"] = catalog.max_size;
    j["radius"] = catalog.radius;
    j["radius_formula"] = catalog.radius_formula;
    j["max_observed_diameter"] = catalog.max_observed_diameter;
    j["warnings"] = catalog.warnings;
    j["orbits"] = json::array();
    for (const auto& o : catalog.orbits) {
        json lines = json::array();
        for (const auto& l : o.rep.lines()) lines.push_back({{"gen", l.gen}, {"rep", B.format(l.rep)}});
        j["orbits"].push_back({{"id", o.id},
                               {"size", o.rep.size()},
                               {"lines", lines},
                               {"pruned_core_diameter", o.rep.pruned_core().diameter()},
                               {"indecomposable", o.indecomposable},
                               {"edge_cut", o.edge_cut},
                               {"crossings_within_catalog", o.crossings_within_catalog}});
    }
    return j.dump(2) + "\n";
}

Catalog catalog_from_json(const LinePattern& P, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::Parse, std::string("catalog JSON: ") + e.what());
    }
    const Basis& B = P.basis();
    try {
        std::vector<std::string> gens;
        for (const auto& g : P.generators()) gens.push_back(B.format(g.word()));
        if (j.at("pattern").get<std::vector<std::string>>() != gens || j.at("basis_rank").get<int>() != P.rank())
            throw Error(Errc::InvalidArgument, "catalog belongs to a different pattern");
        Catalog cat;
        cat.rank = P.rank();
        cat.pattern_text = P.describe();
        cat.max_size = j.at("max_size").get<int>();
        cat.radius = j.at("radius").get<int>();
        cat.radius_formula = j.value("radius_formula", 0);
        cat.max_observed_diameter = j.value("max_observed_diameter", 0);
        cat.warnings = j.value("warnings", std::vector<std::string>{});
        for (const auto& o : j.at("orbits")) {
            LineSet S;
            for (const auto& l : o.at("lines")) S.insert(Line{l.at("gen").get<int>(), B.parse(l.at("rep").get<std::string>())});
            CatalogOrbit orb;
            orb.id = o.at("id").get<int>();
            orb.rep = CutSet(P, std::move(S));
            orb.indecomposable = o.at("indecomposable").get<bool>();
            orb.edge_cut = o.value("edge_cut", false);
            orb.crossings_within_catalog = o.at("crossings_within_catalog").get<int>();
            cat.orbits.push_back(std::move(orb));
        }
        return cat;
    } catch (const json::exception& e) {
        throw Error(Errc::Parse, std::string("catalog JSON: ") + e.what());
    }
}

}  // namespace lp
