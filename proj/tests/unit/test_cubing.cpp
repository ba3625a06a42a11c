#include <doctest.h>

#include <random>

#include "linepat/cubing.hpp"
#include "oracles.hpp"

using namespace lp;

namespace {

LinePattern k4() { return make_pattern({"a", "b", "abAB"}); }
LinePattern f3() { return make_pattern({"Abc", "Acb", "Abbb", "Accc"}); }
LinePattern twin() { return make_pattern({"y", "zx", "zXY", "xyZ"}, 3, "xyz"); }
LinePattern notfg() { return make_pattern({"a", "b", "abaBAbAB"}); }

// Majority vote read far out along each ray, past every core.
Orientation slow_vertex(const Window& W, const BadTriple& t, int rank) {
    Orientation o(W.size());
    for (std::size_t i = 0; i < W.size(); ++i) {
        const CutSet& S = W.instances[i].cut;
        int dist = 1 << 20;
        for (const auto& v : S.pruned_core().vertices()) dist = std::min(dist, tree_distance(t.anchor, v));
        const auto T = static_cast<std::size_t>(dist + S.pruned_core().diameter() + 4);
        int votes = 0;
        for (Letter d : t.dirs) votes += S.side_of_vertex(ray_vertex(t.anchor, d, rank, T));
        o.set(i, votes >= 2);
    }
    return o;
}

// Sageev vertices of a finite window: orientations whose chosen sides pairwise
// meet, with quadrants read off the sphere of radius R.
std::set<Orientation> brute_vertices(const Window& W, int rank, int R) {
    const std::size_t n = W.size();
    REQUIRE(n <= 16);
    std::vector<Word> sphere;
    const Subtree ball = Subtree::ball(Word(), R, rank);
    for (const auto& v : ball.vertices())
        if (static_cast<int>(v.size()) == R) sphere.push_back(v);
    std::vector<std::vector<int>> side(n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& v : sphere) side[i].push_back(W.instances[i].cut.side_of_vertex(v));
    std::vector<std::vector<int>> quad(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < sphere.size(); ++k) quad[i][j] |= 1 << (2 * side[i][k] + side[j][k]);
    std::set<Orientation> out;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j)
                ok = (quad[i][j] >> (2 * ((m >> i) & 1) + ((m >> j) & 1))) & 1;
        if (!ok) continue;
        Orientation o(n);
        for (std::size_t i = 0; i < n; ++i) o.set(i, (m >> i) & 1);
        out.insert(o);
    }
    return out;
}

CubeComplex build(const Window& W, int seed_radius, int rank) {
    CubeComplex C = build_skeleton(W, seeds_in_ball(seed_radius, rank), rank);
    fill_cubes(C, W);
    return C;
}

void no_violations(const CubingChecks& c) {
    CHECK(c.inconsistent_vertices == 0);
    CHECK(c.bad_edges == 0);
    CHECK(c.flip_rule_mismatches == 0);
    CHECK(c.hyperplane_classes_off == 0);
    CHECK(c.crossing_mismatches == 0);
}

}  // namespace

TEST_CASE("toy windows") {
    auto P = f3();
    auto cat = enumerate(P, 5, 2);
    Window big = instances_in_window(P, cat, 0);
    REQUIRE(big.size() > 2);
    std::size_t ci = 0, cj = 0, ni = 0, nj = 0;
    for (std::size_t i = 0; i < big.size(); ++i)
        for (std::size_t j = i + 1; j < big.size(); ++j) {
            if (big.crossing[i][j] && ci == cj) ci = i, cj = j;
            if (!big.crossing[i][j] && ni == nj) ni = i, nj = j;
        }
    REQUIRE(ci != cj);
    REQUIRE(ni != nj);

    Window one = make_window(P, {big.instances[ci]}, 0);
    CubeComplex C1 = build(one, 1, 3);
    CHECK(C1.vertices.size() == 2);
    CHECK(C1.edges.size() == 1);
    CHECK(C1.squares.empty());
    CHECK(hyperplane_crossings(C1, 1) == std::vector<std::vector<char>>{{0}});

    Window two = make_window(P, {big.instances[ci], big.instances[cj]}, 0);
    CubeComplex C2 = build(two, 1, 3);
    CHECK(C2.vertices.size() == 4);
    CHECK(C2.edges.size() == 4);
    CHECK(C2.squares.size() == 1);
    CHECK(C2.max_cube_dim == 2);
    CHECK_FALSE(is_tree(C2));

    Window apart = make_window(P, {big.instances[ni], big.instances[nj]}, 0);
    CubeComplex C3 = build(apart, 1, 3);
    CHECK(C3.vertices.size() == 3);
    CHECK(C3.edges.size() == 2);
    CHECK(is_tree(C3));

    Window none = make_window(P, {}, 0);
    CHECK(none.size() == 0);
}

TEST_CASE("bad triple orientations") {
    auto P = f3();
    auto cat = enumerate(P, 5, 2);
    Window W = instances_in_window(P, cat, 1);
    for (const auto& t : seeds_in_ball(2, 3)) {
        Orientation o = vertex_from_bad_triple(W, t, 3);
        CHECK(o == slow_vertex(W, t, 3));
        CHECK(W.consistent(o));
    }
    for (Letter d : {Letter::gen(0), Letter::gen(1).inv()}) {
        auto ls = ray_letters(d, 3, 40);
        CHECK(ls.front() == d);
        for (std::size_t k = 1; k < ls.size(); ++k) CHECK(ls[k] != ls[k - 1].inv());
    }
    BadTriple bad{Word(), {Letter::gen(0), Letter::gen(0), Letter::gen(1)}};
    CHECK_THROWS_AS(vertex_from_bad_triple(W, bad, 3), Error);

    // triples at a common anchor differ only where the core contains the anchor
    auto seeds = seeds_in_ball(0, 3);
    Orientation first = vertex_from_bad_triple(W, seeds[0], 3);
    for (const auto& t : seeds) {
        Orientation o = vertex_from_bad_triple(W, t, 3);
        for (std::size_t i = 0; i < W.size(); ++i)
            if (o.get(i) != first.get(i)) CHECK(W.instances[i].cut.pruned_core().contains(Word()));
    }
}

TEST_CASE("skeleton equals the brute force vertex set") {
    {
        auto P = k4();
        auto cat = enumerate(P, 3, 2);
        Window W = instances_in_window(P, cat, 1);
        CubeComplex C = build(W, 1, 2);
        std::set<Orientation> got(C.vertices.begin(), C.vertices.end());
        CHECK(got == brute_vertices(W, 2, 5));
    }
    {
        auto P = f3();
        auto cat = enumerate(P, 5, 2);
        Window W = instances_in_window(P, cat, 0);
        CubeComplex C = build(W, 0, 3);
        std::set<Orientation> got(C.vertices.begin(), C.vertices.end());
        CHECK(got == brute_vertices(W, 3, 4));
        CHECK(C.squares.size() > 0);
    }
}

TEST_CASE("complete pattern cubing is the tree") {
    auto P = k4();
    auto cat = enumerate(P, 3, 2);
    CubingOptions co;
    co.radius = 3;
    CubeComplex C;
    auto s = cubing_summary(P, cat, co, &C);
    std::set<TreeEdge> edges;
    const Subtree ball = Subtree::ball(Word(), 3, 2);
    for (const auto& v : ball.vertices())
        for (int c = 0; c < 4; ++c) edges.insert(TreeEdge::of(Direction{v, Letter{static_cast<std::uint8_t>(c)}}));
    CHECK(s.instances == edges.size());
    CHECK(s.tree);
    CHECK(s.squares == 0);
    CHECK(s.vertices == s.edges + 1);
    CHECK(s.interior_valences == std::vector<int>{4});
    CHECK(s.qi.sampled_pairs > 0);
    CHECK(s.qi.c == 1.0);
    CHECK(s.qi.lower_bound_holds);
    CHECK(s.qi.bound_violations == 0);
    no_violations(s.checks);
    CHECK(cubing_dot(C) == cubing_dot(C));
}

TEST_CASE("twin and non finitely generated examples are trees") {
    {
        auto P = twin();
        auto cat = enumerate(P, 3, 2);
        std::size_t smallest = 100;
        for (const auto& o : cat.orbits) smallest = std::min(smallest, o.rep.size());
        CHECK(smallest == 3);
        CubingOptions co;
        co.radius = 2;
        auto s = cubing_summary(P, cat, co);
        CHECK(s.tree);
        CHECK(s.interior_valences == std::vector<int>{4});
        no_violations(s.checks);
    }
    {
        auto P = notfg();
        auto cat = enumerate(P, 5, 2);
        for (const auto& o : cat.orbits) CHECK(o.edge_cut);
        auto s = cubing_summary(P, cat, {});
        CHECK(s.tree);
        no_violations(s.checks);
    }
}

TEST_CASE("non-tree cubing") {
    auto P = f3();
    auto cat = enumerate(P, 5, 2);
    CubingOptions co;
    co.radius = 2;
    auto s = cubing_summary(P, cat, co);
    CHECK(s.squares > 0);
    CHECK_FALSE(s.tree);
    CHECK(s.max_cube_dim == 2);
    CHECK(s.crossing_degrees_by_size.at(5) == std::vector<int>{1, 2, 5});
    CHECK(s.crossing_degrees_by_size.at(4) == std::vector<int>{0});
    CHECK(s.qi.lower_bound_holds);
    CHECK(s.qi.monotone);
    CHECK(s.qi.bound_violations == 0);
    no_violations(s.checks);
    CHECK(s.checks.interior_instances > 0);
}

TEST_CASE("classification") {
    ClassifyOptions fast;
    fast.build_cubing = false;
    CHECK(classify(make_pattern({"a"}), fast).verdict == Verdict::Disconnected);
    CHECK(classify(make_pattern({"ab", "aB"}), fast).verdict == Verdict::Circle);
    CHECK(classify(make_pattern({"abAB"}), fast).verdict == Verdict::Circle);
    CHECK(classify(make_pattern({"b", "abAB"}), fast).verdict == Verdict::HasCutPoint);
    auto pair = classify(make_pattern({"aabaaBB"}), fast);
    CHECK(pair.verdict == Verdict::HasCutPair);
    CHECK(pair.notes.size() == 1);

    auto rigid = classify(k4());
    CHECK(rigid.verdict == Verdict::Rigid);
    REQUIRE(rigid.cubing.has_value());
    CHECK(rigid.cubing->tree);
    CHECK(rigid.cubing->interior_valences == std::vector<int>{4});
    CHECK(exit_code(rigid.verdict) == 0);
    CHECK(exit_code(Verdict::Inconclusive) == 64);
}

TEST_CASE("verdict is invariant under automorphisms") {
    std::mt19937 rng(5);
    ClassifyOptions fast;
    fast.build_cubing = false;
    fast.radius = 2;
    const auto auts = all_whitehead_auts(2);
    std::uniform_int_distribution<std::size_t> pick(0, auts.size() - 1);
    for (const auto& words : std::vector<std::vector<std::string>>{
             {"a"}, {"abAB"}, {"b", "abAB"}, {"aabaaBB"}, {"a", "b", "abAB"}}) {
        auto P = make_pattern(words);
        const Verdict v = classify(P, fast).verdict;
        for (int k = 0; k < 6; ++k) {
            LinePattern Q = P;
            for (int s = 0; s < 3; ++s) Q = apply_aut(auts[pick(rng)], Q);
            CHECK(classify(Q, fast).verdict == v);
        }
    }
}
