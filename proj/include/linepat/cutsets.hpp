#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linepat/pattern.hpp"
#include "linepat/whitehead.hpp"

namespace lp {

// ---- periodic cut sets ------------------------------------------------------

enum class PeriodicVerdict { NotCutSet, BadCutPair, CutPoint, NotCutSegregated };
const char* verdict_name(PeriodicVerdict v);

// Partition of the half-edges at one node, identified by their lines.
struct NodePartition {
    Direction node;
    std::vector<std::vector<Line>> blocks;  // each sorted; blocks sorted by first line
};

struct PeriodicClass {
    PeriodicVerdict verdict = PeriodicVerdict::NotCutSet;
    NodePartition partition;
    CyclicWord g;                 // primitive, canonical
    bool segregated = false;      // g's axis is a pattern line, isolated in its own block
    std::optional<Line> axis;     // that line, when g's axis is one
};

// Throws NotReduced unless Wh(*) is connected without cut vertices.
void require_reduced(const LinePattern& P);

// Finest partition of the loose ends at the entering axis edge of [1, g)
// that is compatible with the splicing map.  g must be cyclically reduced.
NodePartition finest_compatible_partition(const LinePattern& P, const CyclicWord& g);
PeriodicClass classify_periodic(const LinePattern& P, const Word& g);

// A generator whose axis gives a cut point, if any.
std::optional<CyclicWord> has_cut_point(const LinePattern& P);

struct CutPairResult {
    enum class Kind { NoCutPairs, Witness, Inconclusive };
    Kind kind = Kind::NoCutPairs;
    std::optional<CyclicWord> g;     // confirmed periodic witness
    std::vector<Line> two_lines;     // witness when two edges disconnect Wh(*)
    Letter ray_start{};              // for an unconfirmed bad ray: left node at the start
    Word ray;                        // and the letters walked (prefix then loop)
    std::size_t loop_start = 0;      // index in `ray` where the repeating part begins
    int depth = 0;                   // depth explored
    std::size_t states = 0;          // states explored
    std::string how;                 // "two-lines", "generator", "periodic", "ray"
};
const char* kind_name(CutPairResult::Kind k);

CutPairResult detect_cut_pairs(const LinePattern& P, int depth_cap = 32);

// ---- cores and cut sets -----------------------------------------------------

using LineSet = std::set<Line>;

Subtree core(const LinePattern& P, const LineSet& S);
Subtree pruned_core(const LinePattern& P, const LineSet& S);
// Pruning from an explicit core, never removing `keep` if given.
Subtree prune(const LinePattern& P, const LineSet& S, Subtree K, const std::optional<Word>& keep = std::nullopt);

class CutSet {
public:
    CutSet() = default;
    // Builds the cached structure; does not check minimality.
    CutSet(const LinePattern& P, LineSet lines);

    const LineSet& lines() const { return lines_; }
    std::size_t size() const { return lines_.size(); }
    const Subtree& core() const { return core_; }
    const Subtree& pruned_core() const { return pcore_; }
    const std::map<Direction, int>& sides() const { return sides_; }
    int components() const { return components_; }
    // Whether every line has its edge joining two different components.
    bool lines_join() const { return lines_join_; }

    // Side of a vertex outside the pruned core.
    int side_of_vertex(const Word& v) const;
    // Side of a line not in the set.
    int side_of_line(const LinePattern& P, const Line& l) const;
    // Sides of the two ends of a set line, ordered by line position (-inf, +inf).
    std::pair<int, int> sides_of_member(const LinePattern& P, const Line& l) const;

    CutSet translate(const LinePattern& P, const Word& h) const;
    bool contains(const Line& l) const { return lines_.count(l) > 0; }

    friend bool operator==(const CutSet& a, const CutSet& b) { return a.lines_ == b.lines_; }

private:
    void build_sides(const LinePattern& P);

    LineSet lines_;
    Subtree core_, pcore_;
    std::map<Direction, int> sides_;
    // side by line for lines meeting the pruned core that are not in the set
    std::map<Line, int> line_sides_;
    int components_ = 0;
    bool lines_join_ = false;
};

struct Minimality {
    bool minimal = false;
    std::optional<CutSet> cut;
    std::string reason;
};

// With check_cut_points, throws HasCutPoint when the pattern has cut points.
Minimality is_minimal_cut_set(const LinePattern& P, const LineSet& S, bool check_cut_points = true);

bool crosses(const LinePattern& P, const CutSet& S, const CutSet& T);

// Canonical key of the translation orbit: least sorted translate anchored at a pruned-core vertex.
std::vector<Line> orbit_key(const LinePattern& P, const CutSet& S);

// ---- catalog -----------------------------------------------------------------

struct CatalogOrbit {
    int id = 0;
    CutSet rep;
    bool indecomposable = true;
    bool edge_cut = false;
    int crossings_within_catalog = 0;
};

struct Catalog {
    int max_size = 0;
    int radius = 0;           // D actually used
    int radius_formula = 0;   // 2 * longest generator * (b - 1)
    int max_observed_diameter = 0;
    std::vector<CatalogOrbit> orbits;  // sorted by size, then key
    std::vector<std::string> warnings;
    std::string pattern_text;
    int rank = 0;
};

struct Decomposition {
    bool decomposable = false;
    std::optional<CutSet> Q, R;
    std::string method;  // "local" or "catalog"
};

Decomposition is_decomposable(const LinePattern& P, const CutSet& S, const Catalog& catalog);

struct EnumerateOptions {
    int max_size = 0;        // b; 0 means the largest Wh(*) valence
    int radius = -1;         // D; negative means the default
    int threads = 1;
    bool check_preconditions = true;
};

// Practical ceiling on the default radius; see README.
constexpr int kDefaultRadiusCap = 4;

int default_max_size(const LinePattern& P);
int default_radius(const LinePattern& P, int max_size);

Catalog enumerate(const LinePattern& P, const EnumerateOptions& opts);
Catalog enumerate(const LinePattern& P, int max_size, int radius, int threads = 1);

// Translates of catalog orbits whose pruned core meets `region`, deduplicated.
struct Instance {
    int orbit = 0;
    Word shift;
    CutSet cut;
};
std::vector<Instance> translates_meeting(const LinePattern& P, const Catalog& catalog, const Subtree& region,
                                         const std::vector<int>& orbit_filter = {});

std::string catalog_to_json(const LinePattern& P, const Catalog& catalog);
Catalog catalog_from_json(const LinePattern& P, const std::string& text);

}  // namespace lp
