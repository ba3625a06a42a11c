#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "linepat/cutsets.hpp"
#include "linepat/reduction.hpp"

namespace lp {

// Orientation over window instances, one bit per instance.
class Orientation {
public:
    Orientation() = default;
    explicit Orientation(std::size_t n) : n_(n), bits_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    int get(std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, int v) {
        if (v) bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { bits_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    const std::vector<std::uint64_t>& words() const { return bits_; }

    friend bool operator==(const Orientation&, const Orientation&) = default;
    friend auto operator<=>(const Orientation&, const Orientation&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct OrientationHash {
    std::size_t operator()(const Orientation& o) const noexcept;
};

struct Window {
    int radius = 0;
    std::vector<Instance> instances;
    // crossing[i][j] for instances i, j
    std::vector<std::vector<char>> crossing;
    // For non-crossing i != j: side of S_j \ S_i relative to S_i.
    std::vector<std::vector<std::int8_t>> away;
    // Bitset rows used by the flip test: for instance i and side s, the j with
    // away[i][j] == s, and the bits away[j][i].
    std::vector<Orientation> want[2];
    std::vector<Orientation> target;

    std::size_t size() const { return instances.size(); }
    bool consistent(const Orientation& o) const;
    // Whether flipping coordinate i keeps o consistent (equivalently, the
    // chosen side of i is minimal among the chosen sides).
    bool can_flip(const Orientation& o, std::size_t i) const;
    // The same test done by comparing every pair, for cross-checking.
    bool can_flip_slow(const Orientation& o, std::size_t i) const;
};

// Pair relations over a given family of instances.
Window make_window(const LinePattern& P, std::vector<Instance> instances, int radius, int threads = 1);

// Indecomposable orbits only, unless `all` is set.
Window instances_in_window(const LinePattern& P, const Catalog& catalog, int radius, bool all = false,
                          int threads = 1);

struct BadTriple {
    Word anchor;
    Letter dirs[3];
};

// Letters of the ray leaving along d: d, then x y x y^2 x y^3 ...
std::vector<Letter> ray_letters(Letter d, int rank, std::size_t length);
Word ray_vertex(const Word& anchor, Letter d, int rank, std::size_t length);

Orientation vertex_from_bad_triple(const Window& W, const BadTriple& t, int rank);

// All triples of distinct directions at each vertex of B(radius).
std::vector<BadTriple> seeds_in_ball(int radius, int rank);

struct CubeComplex {
    std::vector<Orientation> vertices;
    std::vector<std::pair<int, int>> edges;   // vertex indices, first < second
    std::vector<int> edge_coord;              // instance flipped by each edge
    std::vector<std::array<int, 4>> squares;  // v, v^i, v^j, v^ij
    std::vector<std::pair<int, int>> square_coords;
    int max_cube_dim = 0;
    std::vector<int> seed_of;     // vertex -> index of a seed producing it, or -1
    std::vector<Word> seed_anchor;
    std::vector<std::vector<int>> adj;  // vertex -> edge indices
    std::unordered_map<Orientation, int, OrientationHash> index;
    bool truncated = false;
};

CubeComplex build_skeleton(const Window& W, const std::vector<BadTriple>& seeds, int rank,
                           std::size_t vertex_cap = 2'000'000, int threads = 1);
void fill_cubes(CubeComplex& C, const Window& W, int max_dim = 3);

// crossing pairs seen in squares
std::vector<std::vector<char>> hyperplane_crossings(const CubeComplex& C, std::size_t n);
bool is_tree(const CubeComplex& C);

struct QIReport {
    int sampled_pairs = 0;
    bool lower_bound_holds = true;  // d_T <= d_X on the sample
    double c = 0;                   // max d_X / d_T over pairs with d_T > 0
    bool monotone = true;           // largest d_X never decreases as d_T grows
    int max_neighbourhood = 0;
    int bound_violations = 0;       // hyperplanes with |N(H)| > 2^(k+1)
};

QIReport qi_diagnostics(const LinePattern& P, const CubeComplex& C, const Window& W, int edge_radius);

struct CubingChecks {
    int inconsistent_vertices = 0;
    int bad_edges = 0;            // endpoints not differing in exactly one coordinate
    int flip_rule_mismatches = 0; // fast and pairwise flip tests disagree
    int hyperplane_classes_off = 0;  // coordinates whose edges do not form one class
    int crossing_mismatches = 0;     // squares vs crosses, on instances with pruned core in B(radius)
    int interior_instances = 0;
};

CubingChecks check_complex(const LinePattern& P, const CubeComplex& C, const Window& W);

struct CubingSummary {
    int radius = 0;
    int interior_radius = 0;  // vertices anchored here are far from the window boundary
    std::size_t instances = 0, vertices = 0, edges = 0, squares = 0;
    int max_cube_dim = 0;
    bool tree = false;
    std::vector<int> interior_valences;  // distinct valences of interior vertices
    // distinct hyperplane crossing degrees over instances with pruned core in B(radius)
    std::vector<int> crossing_degrees;
    std::map<std::size_t, std::vector<int>> crossing_degrees_by_size;
    QIReport qi;
    CubingChecks checks;
};

struct CubingOptions {
    int radius = -1;        // window radius; negative means observed core diameter + 2
    bool all_orbits = false;
    int threads = 1;
};

CubingSummary cubing_summary(const LinePattern& P, const Catalog& catalog, const CubingOptions& opts,
                             CubeComplex* keep = nullptr, Window* keep_window = nullptr);

std::string cubing_dot(const CubeComplex& C, const std::string& name = "cubing");

// ---- classification ----------------------------------------------------------------

enum class Verdict { Disconnected, HasCutPoint, HasCutPair, Circle, Rigid, Inconclusive };
const char* verdict_name(Verdict v);
int exit_code(Verdict v);

struct ClassifyOptions {
    int threads = 1;
    int depth_cap = 32;
    int max_size = 0;
    int radius = -1;         // catalog D
    int window_radius = -1;  // cubing rho
    bool build_catalog = true;  // off: stop once the verdict is known
    bool build_cubing = true;
};

struct Classification {
    Verdict verdict = Verdict::Inconclusive;
    ReductionTrace trace;
    LinePattern minimal;
    Connectivity connectivity;
    std::optional<CyclicWord> cut_point;
    std::optional<CutPairResult> cut_pairs;
    std::optional<Catalog> catalog;
    std::optional<CubingSummary> cubing;
    std::vector<std::string> notes;
};

Classification classify(const LinePattern& P, const ClassifyOptions& opts = {});

}  // namespace lp
