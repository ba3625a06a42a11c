#include <doctest.h>

#include <random>

#include "linepat/pattern.hpp"
#include "oracles.hpp"

using namespace lp;

namespace {

const Basis F2(2);
Word W(const char* s) { return F2.parse(s); }
const Letter a = Letter::gen(0), A = Letter::gen(0, true), b = Letter::gen(1), B = Letter::gen(1, true);

}  // namespace

TEST_CASE("line canonicalization") {
    auto P = make_pattern({"ab"});
    CHECK(P.canonicalize(0, W("ab")).rep.empty());
    CHECK(P.canonicalize(0, W("a")).rep == W("a"));
    CHECK(P.canonicalize(0, W("a")).rep == oracle::coset_min(W("a"), W("ab")));
    auto Pb = make_pattern({"b"});
    CHECK(Pb.canonicalize(0, W("abbb")).rep == W("a"));
}

TEST_CASE("canonicalization agrees with the coset oracle") {
    std::mt19937 rng(21);
    for (int t = 0; t < 100; ++t) {
        auto P = oracle::random_pattern(rng, 3, 5, 3);
        for (int s = 0; s < 10; ++s) {
            int i = static_cast<int>(rng() % P.generators().size());
            Word g = oracle::random_word(rng, 3, static_cast<int>(rng() % 9));
            const Word& w = P.generator(i).word();
            Line l = P.canonicalize(i, g);
            CHECK(l.rep == oracle::coset_min(g, w));
            CHECK(P.canonicalize(i, g * w.power(3)) == l);
            CHECK(P.canonicalize(i, g * w.power(-2)) == l);
        }
    }
}

TEST_CASE("lines through the identity") {
    auto Pa = make_pattern({"a"});
    auto c = Pa.lines_through_vertex(Word{});
    REQUIRE(c.size() == 1);
    CHECK(c[0].in == A);
    CHECK(c[0].out == a);

    auto Pc = make_pattern({"abAB"});
    auto cs = Pc.lines_through_vertex(Word{});
    REQUIRE(cs.size() == 4);
    std::set<std::set<Letter>> pairs;
    for (const auto& x : cs) pairs.insert({x.in, x.out});
    CHECK(pairs == std::set<std::set<Letter>>{{A, b}, {B, A}, {a, B}, {b, a}});

    CHECK(make_pattern({"aabaaBB"}).lines_through_vertex(Word{}).size() == 7);
}

TEST_CASE("lines through edges") {
    auto K4 = make_pattern({"a", "b", "abAB"});
    CHECK(K4.lines_through_edge(TreeEdge{Word{}, a}).size() == 3);
    CHECK(make_pattern({"a"}).lines_through_edge(TreeEdge{Word{}, b}).empty());
    auto F3 = make_pattern({"Abc", "Acb", "Abbb", "Accc"}, 3);
    CHECK(F3.lines_through_edge(TreeEdge{Word{}, Letter::gen(0)}).size() == 4);
    CHECK(F3.lines_through_edge(TreeEdge{Word{}, Letter::gen(1)}).size() == 5);
    CHECK(F3.lines_through_edge(TreeEdge{Word{}, Letter::gen(2)}).size() == 5);
}

TEST_CASE("crossing tables agree with walked lines") {
    std::mt19937 rng(33);
    for (int t = 0; t < 60; ++t) {
        auto P = oracle::random_pattern(rng, 3, 6, 3);
        Word v = oracle::random_word(rng, 3, static_cast<int>(rng() % 4));
        auto X = Subtree::single(v);
        std::set<Line> mine;
        for (const auto& c : P.lines_through_vertex(v)) mine.insert(c.line);
        CHECK(mine == oracle::lines_meeting(P, X));
        CHECK(static_cast<int>(P.lines_through_vertex(v).size()) == P.complexity());
        // Equivariance: entries at v are the v-translates of the entries at 1.
        auto here = P.lines_through_vertex(v);
        auto base = P.lines_through_vertex(Word{});
        for (std::size_t k = 0; k < base.size(); ++k) {
            CHECK(here[k].line == P.translate(v, base[k].line));
            CHECK(here[k].in == base[k].in);
        }
        // Each line of an edge crosses it once, and exactly those lines do.
        Letter x{static_cast<std::uint8_t>(rng() % 6)};
        Word u = v.times(x);
        auto E = P.lines_through_edge(TreeEdge::between(v, u));
        std::set<Line> walked;
        for (const auto& l : oracle::lines_meeting(P, Subtree::segment(v, u))) {
            if (P.on_line(l, v) && P.on_line(l, u)) walked.insert(l);
        }
        CHECK(std::set<Line>(E.begin(), E.end()) == walked);
    }
}

TEST_CASE("line geometry") {
    auto P = make_pattern({"ab"});
    Line l = P.canonicalize(0, Word{});
    CHECK(P.line_vertex(l, 3) == W("aba"));
    CHECK(P.line_vertex(l, -2) == W("BA"));
    CHECK(P.line_position(l, W("ab")) == 2);
    CHECK_FALSE(P.line_position(l, W("b")).has_value());
    auto seg = P.line_segment_in(l, Subtree::segment(Word{}, W("a")));
    REQUIRE(seg.size() == 1);
    CHECK(seg[0] == std::vector<Word>{Word{}, W("a")});

    auto Pa = make_pattern({"a"});
    Line ax = Pa.canonicalize(0, Word{});
    CHECK(Pa.line_segment_in(ax, Subtree::single(Word{})).size() == 1);
    CHECK(Pa.line_segment_in(ax, Subtree::single(W("b"))).empty());
    CHECK(Pa.project(ax, W("aab")) == W("aa"));
}

TEST_CASE("hull_of_pair walks the axis") {
    auto h = hull_of_pair(CyclicWord(W("a")), Word{});
    CHECK(h.vertex(-1) == W("A"));
    CHECK(h.vertex(2) == W("aa"));
    auto g = hull_of_pair(CyclicWord(W("ab")), Word{});
    CHECK(g.vertex(3) == W("aba"));
    auto t = hull_of_pair(CyclicWord(W("a")), W("b"));
    CHECK(t.vertex(2) == W("baa"));
    CHECK(t.vertex(-1) == W("bA"));
}

TEST_CASE("subtrees") {
    auto X = Subtree::ball(Word{}, 1, 2);
    CHECK(X.size() == 5);
    CHECK(X.frontier(2).size() == 12);
    CHECK(X.diameter() == 2);
    CHECK(X.leaves(2).size() == 4);
    CHECK_THROWS_AS(Subtree(std::vector<Word>{Word{}, W("ab")}), Error);
    CHECK(Subtree::hull({W("ab"), W("A")}).size() == 4);
    auto d = Subtree::segment(Word{}, W("a")).direction_toward(W("abb"));
    CHECK(d.from == W("a"));
    CHECK(d.letter == b);
}

TEST_CASE("pattern loader") {
    auto L = load_pattern_text("# sample\nabb\n\nbaB\na\nBA\nab\n");
    CHECK(L.pattern.generators().size() == 3);
    CHECK(!L.notes.empty());
    CHECK_THROWS_AS(load_pattern_text("# nothing\n"), Error);
    try {
        load_pattern_text("a\nbB\n");
        FAIL("expected EmptyWord");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EmptyWord);
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
    auto R = load_pattern_text("#@ rank 3\nab\n");
    CHECK(R.pattern.rank() == 3);
    auto N = load_pattern_text("#@ basis xyz\nyx\nzX\n");
    CHECK(N.pattern.rank() == 3);
    CHECK(N.pattern.basis().names() == "xyz");
    auto Pw = load_pattern_text("abab\n");
    CHECK(Pw.pattern.generator(0) == CyclicWord(W("ab")));
}
