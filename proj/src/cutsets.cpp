#include <algorithm>

#include "linepat/cutsets.hpp"

namespace lp {

namespace {

// Branch points contributed by a pair of lines: the ends of their overlap,
// or the two ends of the bridge between them.
std::pair<Word, Word> pairwise_points(const LinePattern& P, const Line& l1, const Line& l2) {
    const long p = P.project_position(l1, l2.rep);
    const Word a = P.line_vertex(l1, p);
    if (!P.on_line(l2, a)) return {a, P.project(l2, a)};
    const long limit = 4 * static_cast<long>(P.generator(l1.gen).size() + P.generator(l2.gen).size()) + 8;
    long lo = p, hi = p;
    while (hi - p < limit && P.on_line(l2, P.line_vertex(l1, hi + 1))) ++hi;
    while (p - lo < limit && P.on_line(l2, P.line_vertex(l1, lo - 1))) --lo;
    if (hi - p >= limit || p - lo >= limit) throw Error(Errc::Internal, "distinct lines share an unbounded segment");
    return {P.line_vertex(l1, lo), P.line_vertex(l1, hi)};
}

// Letter from v to its unique neighbour in K.
std::optional<Letter> stem(const Subtree& K, const Word& v, int rank) {
    std::optional<Letter> out;
    for (int c = 0; c < 2 * rank; ++c) {
        Letter x{static_cast<std::uint8_t>(c)};
        if (K.contains(v.times(x))) {
            if (out) return std::nullopt;
            out = x;
        }
    }
    return out;
}

bool prunable(const LinePattern& P, const LineSet& S, const Word& v, Letter toward) {
    for (const auto& c : P.lines_through_vertex(v))
        if (S.count(c.line) && !c.uses(toward)) return false;
    return true;
}

}  // namespace

Subtree core(const LinePattern& P, const LineSet& S) {
    if (S.size() < 2) throw Error(Errc::InvalidArgument, "the core needs at least two lines");
    std::vector<Word> pts;
    for (auto i = S.begin(); i != S.end(); ++i)
        for (auto j = std::next(i); j != S.end(); ++j) {
            auto [a, b] = pairwise_points(P, *i, *j);
            pts.push_back(std::move(a));
            pts.push_back(std::move(b));
        }
    return Subtree::hull(pts);
}

Subtree prune(const LinePattern& P, const LineSet& S, Subtree K, const std::optional<Word>& keep) {
    const int rank = P.rank();
    // Edge cut sets keep exactly their edge; leaf order would otherwise decide
    // which adjacent pair survives.
    for (const auto& u : K.vertices())
        for (int c = 0; c < 2 * rank; ++c) {
            Letter x{static_cast<std::uint8_t>(c)};
            const Word w = u.times(x);
            if (w.size() < u.size() || !K.contains(w)) continue;
            const auto ls = P.lines_through_edge(TreeEdge{u, x});
            if (ls.size() == S.size() && std::all_of(ls.begin(), ls.end(), [&](const Line& l) { return S.count(l); }))
                return Subtree(std::vector<Word>{u, w});
        }
    for (;;) {
        if (K.size() == 1) return K;
        const auto leaves = K.leaves(rank);
        if (K.size() == 2) {
            int ok = 0;
            for (const auto& v : leaves) ok += prunable(P, S, v, *stem(K, v, rank));
            if (ok == 2) return K;  // edge cut set form
        }
        bool removed = false;
        for (const auto& v : leaves) {
            if (keep && v == *keep) continue;
            if (!prunable(P, S, v, *stem(K, v, rank))) continue;
            std::vector<Word> rest;
            for (const auto& u : K.vertices())
                if (!(u == v)) rest.push_back(u);
            K = Subtree(std::move(rest));
            removed = true;
            break;
        }
        if (!removed) return K;
    }
}

Subtree pruned_core(const LinePattern& P, const LineSet& S) { return prune(P, S, core(P, S)); }

// ---- CutSet --------------------------------------------------------------------

CutSet::CutSet(const LinePattern& P, LineSet lines) : lines_(std::move(lines)) {
    core_ = lp::core(P, lines_);
    pcore_ = prune(P, lines_, core_);
    build_sides(P);
}

void CutSet::build_sides(const LinePattern& P) {
    const WhGraph full = wh_over(P, pcore_);
    const WhGraph G = delete_lines(full, lines_);
    const Components C = lp::components(G);
    components_ = C.count;
    sides_.clear();
    line_sides_.clear();
    for (std::size_t k = 0; k < G.nodes().size(); ++k) sides_[G.nodes()[k]] = C.node_comp[k];
    for (std::size_t i = 0; i < G.edges().size(); ++i) line_sides_[G.edges()[i].line] = C.edge_comp[i];
    std::size_t met = 0;
    lines_join_ = true;
    for (const auto& e : full.edges()) {
        if (!lines_.count(e.line)) continue;
        ++met;
        if (sides_.at(e.a.at) == sides_.at(e.b.at)) lines_join_ = false;
    }
    if (met != lines_.size()) lines_join_ = false;
}

int CutSet::side_of_vertex(const Word& v) const {
    return sides_.at(pcore_.direction_toward(v));
}

int CutSet::side_of_line(const LinePattern& P, const Line& l) const {
    (void)P;
    if (lines_.count(l)) throw Error(Errc::InvalidArgument, "line belongs to the cut set");
    auto it = line_sides_.find(l);
    if (it != line_sides_.end()) return it->second;
    return side_of_vertex(l.rep);
}

std::pair<int, int> CutSet::sides_of_member(const LinePattern& P, const Line& l) const {
    if (!lines_.count(l)) throw Error(Errc::InvalidArgument, "line is not in the cut set");
    // the member's ends are the frontier directions it leaves the pruned core by
    std::vector<std::pair<long, int>> ends;
    for (const auto& seg : P.line_segment_in(l, pcore_)) {
        const Word& first = seg.front();
        const Word& last = seg.back();
        const long pf = *P.line_position(l, first), pl = *P.line_position(l, last);
        const Word before = P.line_vertex(l, std::min(pf, pl) - 1);
        const Word after = P.line_vertex(l, std::max(pf, pl) + 1);
        const Word& lo = pf < pl ? first : last;
        const Word& hi = pf < pl ? last : first;
        ends.push_back({std::min(pf, pl), sides_.at(Direction{lo, (lo.inverse() * before)[0]})});
        ends.push_back({std::max(pf, pl), sides_.at(Direction{hi, (hi.inverse() * after)[0]})});
    }
    if (ends.size() != 2) throw Error(Errc::Internal, "set line does not cross the pruned core once");
    return {ends[0].second, ends[1].second};
}

CutSet CutSet::translate(const LinePattern& P, const Word& h) const {
    LineSet moved;
    for (const auto& l : lines_) moved.insert(P.translate(h, l));
    if (components_ != 2) return CutSet(P, std::move(moved));
    CutSet out;
    out.lines_ = std::move(moved);
    out.core_ = core_.translate(h);
    out.pcore_ = pcore_.translate(h);
    out.components_ = components_;
    out.lines_join_ = lines_join_;
    for (const auto& [d, s] : sides_) out.sides_[Direction{h * d.from, d.letter}] = s;
    for (const auto& [l, s] : line_sides_) out.line_sides_[P.translate(h, l)] = s;
    if (out.sides_.begin()->second != 0) {
        for (auto& [d, s] : out.sides_) s ^= 1;
        for (auto& [l, s] : out.line_sides_) s ^= 1;
    }
    return out;
}

// ---- minimality, crossing ---------------------------------------------------------

Minimality is_minimal_cut_set(const LinePattern& P, const LineSet& S, bool check_cut_points) {
    if (check_cut_points && has_cut_point(P)) throw Error(Errc::HasCutPoint, "the pattern has cut points");
    Minimality m;
    if (S.size() < 2) {
        m.reason = "a single line does not separate";
        return m;
    }
    CutSet cut(P, S);
    if (cut.components() != 2) {
        m.reason = "complement has " + std::to_string(cut.components()) + " components";
        return m;
    }
    if (!cut.lines_join()) {
        m.reason = "some line does not join the two components";
        return m;
    }
    m.minimal = true;
    m.cut = std::move(cut);
    return m;
}

bool crosses(const LinePattern& P, const CutSet& S, const CutSet& T) {
    bool seen[2] = {false, false};
    for (const auto& l : T.lines()) {
        if (S.contains(l)) continue;
        seen[S.side_of_line(P, l)] = true;
        if (seen[0] && seen[1]) return true;
    }
    return false;
}

std::vector<Line> orbit_key(const LinePattern& P, const CutSet& S) {
    std::vector<Line> best;
    for (const auto& x : S.pruned_core().vertices()) {
        const Word xi = x.inverse();
        std::vector<Line> k;
        for (const auto& l : S.lines()) k.push_back(P.translate(xi, l));
        std::sort(k.begin(), k.end());
        if (best.empty() || k < best) best = std::move(k);
    }
    return best;
}

// ---- decomposability ---------------------------------------------------------------

namespace {

std::optional<Decomposition> local_split(const LinePattern& P, const CutSet& S) {
    const Subtree& K = S.pruned_core();
    const int rank = P.rank();
    for (const auto& v : K.vertices()) {
        if (K.degree(v, rank) != 2) continue;
        const auto through = P.lines_through_vertex(v);
        bool hits = false;
        for (const auto& c : through) hits |= S.contains(c.line);
        if (hits) continue;
        std::vector<Letter> inward;
        for (int c = 0; c < 2 * rank; ++c) {
            Letter x{static_cast<std::uint8_t>(c)};
            if (K.contains(v.times(x))) inward.push_back(x);
        }
        WhGraph W = wh_at_vertex(P, v);
        for (Letter x : inward) W = delete_node(W, Direction{v, x});
        const auto C = components(W);
        if (C.count != 2) continue;
        const auto fe = free_edge_components(W, C);
        if (fe.size() != 1) continue;
        const Line l = W.edges()[C.edges_of[fe[0]][0]].line;
        // the two branches of K minus v
        LineSet q{l}, r{l};
        for (const auto& m : S.lines()) {
            const auto segs = P.line_segment_in(m, K);
            if (segs.empty()) throw Error(Errc::Internal, "set line misses the pruned core");
            const Word& u = segs.front().front();
            const auto path = geodesic(v, u);
            (path.size() > 1 && path[1] == v.times(inward[0]) ? q : r).insert(m);
        }
        auto mq = is_minimal_cut_set(P, q, false), mr = is_minimal_cut_set(P, r, false);
        if (!mq.minimal || !mr.minimal) continue;
        if (q.size() >= S.size() || r.size() >= S.size()) continue;
        if (crosses(P, *mq.cut, *mr.cut)) continue;
        Decomposition d;
        d.decomposable = true;
        d.Q = std::move(mq.cut);
        d.R = std::move(mr.cut);
        d.method = "local";
        return d;
    }
    return std::nullopt;
}

}  // namespace

Decomposition is_decomposable(const LinePattern& P, const CutSet& S, const Catalog& catalog) {
    if (catalog.max_size < static_cast<int>(S.size()) - 1)
        throw Error(Errc::CatalogTooSmall, "catalog stops at size " + std::to_string(catalog.max_size) +
                                               ", need " + std::to_string(S.size() - 1));
    if (auto d = local_split(P, S)) return *d;

    // Q must share at least two lines with S, so its core meets the core of S.
    std::set<LineSet> tried;
    for (const auto& orb : catalog.orbits) {
        if (orb.rep.size() >= S.size()) continue;
        for (const auto& p : S.core().vertices())
            for (const auto& x : orb.rep.core().vertices()) {
                const Word h = p * x.inverse();
                LineSet q;
                for (const auto& l : orb.rep.lines()) q.insert(P.translate(h, l));
                if (!tried.insert(q).second) continue;
                std::size_t shared = 0;
                for (const auto& l : q) shared += S.contains(l);
                if (shared < 2 || q.size() - shared >= shared) continue;
                LineSet r;
                std::set_symmetric_difference(q.begin(), q.end(), S.lines().begin(), S.lines().end(),
                                              std::inserter(r, r.end()));
                if (r.size() >= S.size()) continue;
                auto mr = is_minimal_cut_set(P, r, false);
                if (!mr.minimal) continue;
                CutSet Q = orb.rep.translate(P, h);
                if (crosses(P, Q, *mr.cut)) continue;
                Decomposition d;
                d.decomposable = true;
                d.Q = std::move(Q);
                d.R = std::move(mr.cut);
                d.method = "catalog";
                return d;
            }
    }
    return Decomposition{};
}

}  // namespace lp
