#include <doctest.h>

#include <map>
#include <queue>
#include <random>

#include "linepat/reduction.hpp"
#include "oracles.hpp"

using namespace lp;

namespace {

const Basis F2(2);
Word W(const char* s) { return F2.parse(s); }

// Smallest complexity among all single-step images, applying each automorphism.
int best_single_step(const LinePattern& P) {
    int best = P.complexity();
    for (const auto& phi : all_whitehead_auts(P.rank())) best = std::min(best, apply_aut(phi, P).complexity());
    return best;
}

// Breadth-first search over Whitehead images of a single word, bounded by length.
int bfs_minimum(const CyclicWord& w, int rank, int bound) {
    std::set<CyclicWord> seen{w};
    std::queue<CyclicWord> q;
    q.push(w);
    int best = static_cast<int>(w.size());
    const auto auts = all_whitehead_auts(rank);
    while (!q.empty()) {
        CyclicWord c = q.front();
        q.pop();
        best = std::min(best, static_cast<int>(c.size()));
        for (const auto& phi : auts) {
            CyclicWord d = primitive_root(apply_aut_cyclic(phi, c)).root;
            if (static_cast<int>(d.size()) <= bound && seen.insert(d).second) q.push(d);
        }
    }
    return best;
}

}  // namespace

TEST_CASE("complexity is the total generator length") {
    CHECK(complexity(make_pattern({"abAB"})) == 4);
    CHECK(complexity(make_pattern({"aabaaBB"})) == 7);
    CHECK(complexity(make_pattern({"ab", "aB"})) == 4);
}

TEST_CASE("predicted complexity matches applying the automorphism") {
    std::mt19937 rng(17);
    for (int t = 0; t < 40; ++t) {
        auto P = oracle::random_pattern(rng, 2 + t % 2, 6, 2);
        auto star = wh_at_vertex(P, Word{});
        for (const auto& phi : all_whitehead_auts(P.rank()))
            CHECK(predicted_complexity(P, star, phi) == apply_aut(phi, P).complexity());
    }
}

TEST_CASE("reducing automorphisms") {
    auto P = make_pattern({"abb"});
    auto phi = reducing_automorphism(P);
    REQUIRE(phi.has_value());
    CHECK(apply_aut(*phi, P).complexity() == 2);
    CHECK(best_single_step(P) == 2);
    CHECK_FALSE(reducing_automorphism(make_pattern({"abAB"})).has_value());
    CHECK(best_single_step(make_pattern({"abAB"})) == 4);
    CHECK_FALSE(reducing_automorphism(make_pattern({"a"})).has_value());
    CHECK(reducing_automorphism(P, 4) == phi);
}

TEST_CASE("cut vertex reduction") {
    auto phi = cut_vertex_reduction(make_pattern({"abb"}));
    REQUIRE(phi.has_value());
    CHECK(phi->x.index() == 1);
    CHECK(apply_aut(*phi, make_pattern({"abb"})).complexity() < 3);
    CHECK_FALSE(cut_vertex_reduction(make_pattern({"abAB"})).has_value());
    CHECK_FALSE(cut_vertex_reduction(make_pattern({"a", "b", "abAB"})).has_value());
    CHECK_THROWS_AS(cut_vertex_reduction(make_pattern({"a"})), Error);
}

TEST_CASE("cut vertex reducers always reduce on random connected patterns") {
    std::mt19937 rng(41);
    int seen = 0;
    for (int t = 0; t < 300 && seen < 40; ++t) {
        auto P = oracle::random_pattern(rng, 2, 6, 2);
        auto star = wh_at_vertex(P, Word{});
        if (components(star).count != 1) continue;
        auto phi = cut_vertex_reduction(P);
        if (!phi) continue;
        ++seen;
        CHECK(apply_aut(*phi, P).complexity() < P.complexity());
    }
    CHECK(seen > 0);
}

TEST_CASE("minimize") {
    auto T = minimize(make_pattern({"abb"}));
    CHECK(T.complexities.back() == 1);
    CHECK(bfs_minimum(CyclicWord(W("abb")), 2, 4) == 1);
    for (std::size_t i = 1; i < T.complexities.size(); ++i) CHECK(T.complexities[i] < T.complexities[i - 1]);

    auto C = minimize(make_pattern({"abAB"}));
    CHECK(C.steps.empty());
    CHECK(C.complexities.back() == 4);
    CHECK(best_single_step(C.final_pattern) == 4);

    auto D = minimize(make_pattern({"ab", "aB"}));
    CHECK(D.steps.empty());
    CHECK(D.complexities.back() == 4);
    CHECK(best_single_step(D.final_pattern) == 4);
}

TEST_CASE("minimized patterns have no cut vertex when connected") {
    std::mt19937 rng(5);
    for (int t = 0; t < 60; ++t) {
        auto P = oracle::random_pattern(rng, 2 + t % 2, 7, 3);
        auto T = minimize(P);
        CHECK(static_cast<int>(T.steps.size()) <= P.complexity());
        CHECK(best_single_step(T.final_pattern) == T.final_pattern.complexity());
        auto star = wh_at_vertex(T.final_pattern, Word{});
        if (components(star).count == 1) CHECK(cut_vertices(star).empty());
    }
}

TEST_CASE("width") {
    CHECK(width(CyclicWord(W("abb")), F2) == 1);
    CHECK(width(CyclicWord(W("abAB")), F2) == 2);
    CHECK(width(CyclicWord(W("a")), F2) == 1);
    Basis F3(3);
    CHECK(width(CyclicWord(F3.parse("abAB")), F3) == 2);
}

TEST_CASE("decomposition connectivity") {
    auto d = decomposition_connectivity(make_pattern({"a"}));
    CHECK_FALSE(d.connected);
    CHECK(d.side_a.size() + d.side_b.size() == 4);
    CHECK(decomposition_connectivity(make_pattern({"abAB"})).connected);
    CHECK_FALSE(decomposition_connectivity(make_pattern({"abb"})).connected);
    CHECK(decomposition_connectivity(make_pattern({"a", "b", "abAB"})).connected);
}
