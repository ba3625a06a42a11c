#pragma once

#include <optional>
#include <vector>

#include "linepat/pattern.hpp"
#include "linepat/whitehead.hpp"

namespace lp {

struct ReductionTrace {
    std::vector<WhiteheadAut> steps;
    std::vector<int> complexities;  // starts with the input complexity
    LinePattern final_pattern;
};

int complexity(const LinePattern& P);

// Edges of Wh(*) joining Z to its complement.
int cut_size(const WhGraph& star, const WhiteheadAut& phi);
// Complexity after applying phi, predicted from Wh(*).
int predicted_complexity(const LinePattern& P, const WhGraph& star, const WhiteheadAut& phi);

LinePattern apply_aut(const WhiteheadAut& phi, const LinePattern& P);

// All valid non-identity (x, Z) for the rank, in aut_less order.
std::vector<WhiteheadAut> all_whitehead_auts(int rank);

std::optional<WhiteheadAut> reducing_automorphism(const LinePattern& P, int threads = 1);
std::optional<WhiteheadAut> cut_vertex_reduction(const LinePattern& P);

ReductionTrace minimize(const LinePattern& P, int threads = 1);

int width(const CyclicWord& w, const Basis& basis);

struct Connectivity {
    bool connected = false;
    // For a disconnected graph: one component's letters against the rest,
    // in the basis of the minimized pattern.
    std::vector<Letter> side_a, side_b;
    ReductionTrace trace;
};

Connectivity decomposition_connectivity(const LinePattern& P, int threads = 1);

}  // namespace lp
