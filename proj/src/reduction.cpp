#include "linepat/reduction.hpp"

#include <algorithm>

#include "linepat/parallel.hpp"

namespace lp {

int complexity(const LinePattern& P) { return P.complexity(); }

int cut_size(const WhGraph& star, const WhiteheadAut& phi) {
    int cut = 0;
    for (const auto& e : star.edges())
        if (phi.contains(e.a.at.letter) != phi.contains(e.b.at.letter)) ++cut;
    return cut;
}

int predicted_complexity(const LinePattern& P, const WhGraph& star, const WhiteheadAut& phi) {
    return P.complexity() - star.valence(Direction{Word{}, phi.x}) + cut_size(star, phi);
}

LinePattern apply_aut(const WhiteheadAut& phi, const LinePattern& P) {
    std::vector<CyclicWord> gens;
    for (const auto& g : P.generators()) gens.push_back(apply_aut_cyclic(phi, g));
    return LinePattern(P.basis(), std::move(gens));
}

std::vector<WhiteheadAut> all_whitehead_auts(int rank) {
    const int L = 2 * rank;
    if (L > 62) throw Error(Errc::InvalidArgument, "rank too large for exhaustive search");
    std::vector<WhiteheadAut> out;
    for (int xc = 0; xc < L; ++xc) {
        Letter x{static_cast<std::uint8_t>(xc)};
        std::vector<int> others;
        for (int c = 0; c < L; ++c)
            if (c != xc && c != x.inv().code) others.push_back(c);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << others.size()); ++m) {
            WhiteheadAut phi{x, std::uint64_t{1} << xc};
            for (std::size_t i = 0; i < others.size(); ++i)
                if ((m >> i) & 1u) phi.Z |= std::uint64_t{1} << others[i];
            if (!phi.is_identity()) out.push_back(phi);
        }
    }
    std::sort(out.begin(), out.end(), aut_less);
    return out;
}

std::optional<WhiteheadAut> reducing_automorphism(const LinePattern& P, int threads) {
    const WhGraph star = wh_at_vertex(P, Word{});
    const auto cands = all_whitehead_auts(P.rank());
    std::vector<int> after(cands.size());
    parallel_for(cands.size(), threads, [&](std::size_t i) { after[i] = predicted_complexity(P, star, cands[i]); });
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (after[i] < P.complexity() && (!best || after[i] < after[*best])) best = i;
    if (!best) return std::nullopt;
    return cands[*best];
}

std::optional<WhiteheadAut> cut_vertex_reduction(const LinePattern& P) {
    const WhGraph star = wh_at_vertex(P, Word{});
    if (components(star).count != 1) throw Error(Errc::Disconnected, "Wh(*) is disconnected");
    const auto cuts = cut_vertices(star);
    if (cuts.empty()) return std::nullopt;
    const Direction x = cuts.front();
    const WhGraph rest = delete_node(star, x);
    const auto C = components(rest);
    const int bar = rest.node_index(Direction{Word{}, x.letter.inv()});
    for (int c = 0; c < C.count; ++c) {
        if (C.nodes_of[c].empty() || C.node_comp[bar] == c) continue;
        WhiteheadAut phi{x.letter, std::uint64_t{1} << x.letter.code};
        for (int k : C.nodes_of[c]) phi.Z |= std::uint64_t{1} << rest.nodes()[k].letter.code;
        return phi;
    }
    throw Error(Errc::Internal, "cut vertex without a far component");
}

ReductionTrace minimize(const LinePattern& P, int threads) {
    ReductionTrace T;
    T.final_pattern = P;
    T.complexities.push_back(P.complexity());
    while (auto phi = reducing_automorphism(T.final_pattern, threads)) {
        T.final_pattern = apply_aut(*phi, T.final_pattern);
        T.steps.push_back(*phi);
        if (T.final_pattern.complexity() >= T.complexities.back())
            throw Error(Errc::Internal, "Whitehead step did not reduce complexity");
        T.complexities.push_back(T.final_pattern.complexity());
    }
    return T;
}

int width(const CyclicWord& w, const Basis& basis) {
    const auto T = minimize(LinePattern(basis, {w}));
    const WhGraph star = wh_at_vertex(T.final_pattern, Word{});
    int used = 0;
    for (const auto& d : star.nodes())
        if (star.valence(d) > 0) ++used;
    return used / 2;
}

Connectivity decomposition_connectivity(const LinePattern& P, int threads) {
    if (P.generators().empty()) throw Error(Errc::EmptyPattern, "pattern has no generators");
    Connectivity out;
    out.trace = minimize(P, threads);
    const WhGraph star = wh_at_vertex(out.trace.final_pattern, Word{});
    const auto C = components(star);
    out.connected = C.count == 1;
    if (!out.connected) {
        for (int k = 0; k < static_cast<int>(star.nodes().size()); ++k)
            (C.node_comp[k] == C.node_comp[0] ? out.side_a : out.side_b).push_back(star.nodes()[k].letter);
    }
    return out;
}

}  // namespace lp
