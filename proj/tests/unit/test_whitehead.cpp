#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "linepat/whitehead.hpp"
#include "oracles.hpp"

using namespace lp;

namespace {

const Basis F2(2);
Word W(const char* s) { return F2.parse(s); }
const Letter a = Letter::gen(0), A = Letter::gen(0, true), b = Letter::gen(1), B = Letter::gen(1, true);
Direction at1(Letter x) { return Direction{Word{}, x}; }

int multiplicity(const WhGraph& G, Letter x, Letter y) {
    int m = 0;
    for (const auto& e : G.edges()) {
        Letter p = e.a.at.letter, q = e.b.at.letter;
        if ((p == x && q == y) || (p == y && q == x)) ++m;
    }
    return m;
}

// A cycle: connected, every node of valence 2, as many edges as nodes.
bool is_cycle(const WhGraph& G) {
    if (components(G).count != 1) return false;
    for (const auto& d : G.nodes())
        if (G.valence(d) != 2) return false;
    return G.edges().size() == G.nodes().size();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("Wh(*) of the four basic patterns") {
    auto G1 = wh_at_vertex(make_pattern({"a"}), Word{});
    CHECK(components(G1).count == 3);
    CHECK(cut_vertices(G1).empty());
    CHECK(G1.edges().size() == 1);

    auto G2 = wh_at_vertex(make_pattern({"abb"}), Word{});
    CHECK(components(G2).count == 1);
    CHECK(cut_vertices(G2) == std::vector<Direction>{at1(b), at1(B)});

    auto G3 = wh_at_vertex(make_pattern({"abAB"}), Word{});
    CHECK(components(G3).count == 1);
    CHECK(cut_vertices(G3).empty());
    CHECK(is_cycle(G3));
    CHECK(multiplicity(G3, a, b) == 1);
    CHECK(multiplicity(G3, a, A) == 0);

    auto G4 = wh_at_vertex(make_pattern({"aabaaBB"}), Word{});
    CHECK(components(G4).count == 1);
    CHECK(cut_vertices(G4).empty());
    CHECK(multiplicity(G4, a, A) == 2);
    CHECK(G4.edges().size() == 7);
}

TEST_CASE("six-cycle over an edge equals the splice") {
    auto P = make_pattern({"ab", "aB"});
    auto X = Subtree::segment(Word{}, W("a"));
    auto G = wh_over(P, X);
    CHECK(G.nodes().size() == 6);
    CHECK(is_cycle(G));
    auto S = splice(wh_at_vertex(P, Word{}), wh_at_vertex(P, W("a")), TreeEdge{Word{}, a});
    CHECK(S == G);
    auto S2 = splice(wh_at_vertex(P, W("a")), wh_at_vertex(P, Word{}), TreeEdge{Word{}, a});
    CHECK(S2 == G);
    CHECK(G == oracle::wh_brute(P, X));
    CHECK(is_cycle(wh_at_vertex(P, Word{})));
    CHECK(is_cycle(wh_at_vertex(P, W("a"))));
}

TEST_CASE("splice errors") {
    auto P = make_pattern({"ab", "aB"});
    auto G = wh_at_vertex(P, Word{});
    CHECK_THROWS_AS(splice(G, wh_at_vertex(P, W("ab")), TreeEdge{Word{}, a}), Error);
    try {
        splice(G, wh_at_vertex(P, W("b")), TreeEdge{Word{}, a});
        FAIL("expected SupportsNotAdjacent");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SupportsNotAdjacent);
    }
    // Deleting a line from one side leaves unequal line sets at the spliced nodes.
    auto H = delete_lines(wh_at_vertex(P, W("a")), {P.lines_through_edge(TreeEdge{Word{}, a})[0]});
    try {
        splice(G, H, TreeEdge{Word{}, a});
        FAIL("expected LineMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::LineMismatch);
    }
}

TEST_CASE("two disjoint a-edges over a b-segment") {
    auto P = make_pattern({"a"});
    auto G = wh_over(P, Subtree::segment(Word{}, W("b")));
    CHECK(G.edges().size() == 2);
    CHECK(G.nodes().size() == 6);
    CHECK(components(G).count == 4);
}

TEST_CASE("deletion operators on {b, abAB}") {
    auto P = make_pattern({"b", "abAB"});
    auto G = wh_at_vertex(P, Word{});
    Line l = P.canonicalize(P.generator_index(CyclicWord(W("b"))).value(), Word{});
    CHECK(components(G).count == 1);

    auto minus_l = delete_lines(G, {l});
    CHECK(minus_l.edges().size() == 4);
    CHECK(is_cycle(minus_l));

    auto closed = delete_line_closed(G, l);
    CHECK(closed.nodes() == std::vector<Direction>{at1(a), at1(A)});
    CHECK(closed.loose_ends().size() == 4);
    CHECK(components(closed).count == 2);
    CHECK_THROWS_AS(delete_line_closed(closed, l), Error);

    auto Y = delete_node(delete_node(G, at1(b)), at1(B));
    auto C = components(Y);
    CHECK(C.count == 3);
    auto free = free_edge_components(Y, C);
    REQUIRE(free.size() == 1);
    CHECK(Y.edges()[C.edges_of[free[0]][0]].line == l);
    CHECK(Y.loose_ends().size() == 6);
    CHECK_THROWS_AS(delete_node(Y, at1(b)), Error);

    CHECK(delete_lines(G, {}) == G);
    auto iso = delete_node(wh_at_vertex(make_pattern({"a"}), Word{}), at1(b));
    CHECK(iso.edges() == wh_at_vertex(make_pattern({"a"}), Word{}).edges());
    auto da = delete_node(wh_at_vertex(make_pattern({"a"}), Word{}), at1(a));
    CHECK(da.loose_ends().size() == 1);
}

TEST_CASE("components and cut vertices edge cases") {
    CHECK(components(WhGraph{}).count == 0);
    auto G = wh_at_vertex(make_pattern({"a", "b", "abAB"}), Word{});
    CHECK(components(G).count == 1);
    CHECK(cut_vertices(G).empty());
    CHECK(free_edge_components(wh_at_vertex(make_pattern({"abAB"}), Word{})).empty());
    // Single edge plus isolated nodes.
    CHECK(cut_vertices(wh_at_vertex(make_pattern({"a"}), Word{})).empty());
}

TEST_CASE("K4 over an a-segment has no cut vertex and no free edge") {
    auto P = make_pattern({"a", "b", "abAB"});
    auto G = wh_over(P, Subtree::segment(Word{}, W("a")));
    CHECK(cut_vertices(G).empty());
    CHECK(free_edge_components(G).empty());
}

TEST_CASE("deleting an edge cut set disconnects an interior hull") {
    auto P = make_pattern({"a", "b", "abAB"});
    auto X = Subtree::ball(Word{}, 1, 2);
    auto S = P.lines_through_edge(TreeEdge{Word{}, a});
    auto G = delete_lines(wh_over(P, X), std::set<Line>(S.begin(), S.end()));
    CHECK(components(G).count == oracle::component_count(G));
    CHECK(components(G).count == 2);
}

TEST_CASE("wh_over agrees with walked lines and iterated splicing") {
    std::mt19937 rng(2024);
    int checked = 0;
    for (int t = 0; t < 200; ++t) {
        const int rank = 2 + static_cast<int>(rng() % 2);
        auto P = oracle::random_pattern(rng, rank, 6, 3);
        auto X = oracle::random_subtree(rng, rank, 1 + static_cast<int>(rng() % 6));
        auto G = wh_over(P, X);
        CHECK(G == oracle::wh_brute(P, X));
        // Splice vertex by vertex in a shuffled order, keeping the support connected.
        std::vector<Word> order = X.vertices();
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<Word> done{order[0]};
        std::vector<Word> rest(order.begin() + 1, order.end());
        WhGraph acc = wh_at_vertex(P, order[0]);
        while (!rest.empty()) {
            for (std::size_t i = 0; i < rest.size(); ++i) {
                const Word& v = rest[i];
                auto nb = std::find_if(done.begin(), done.end(), [&](const Word& u) { return tree_distance(u, v) == 1; });
                if (nb == done.end()) continue;
                acc = splice(acc, wh_at_vertex(P, v), TreeEdge::between(*nb, v));
                done.push_back(v);
                rest.erase(rest.begin() + i);
                break;
            }
        }
        CHECK(acc == G);
        int loose = 0, val = 0;
        for (const auto& d : G.nodes()) {
            val += G.valence(d);
            CHECK(G.valence(d) == static_cast<int>(P.lines_through_edge(TreeEdge::of(d)).size()));
        }
        loose = static_cast<int>(G.loose_ends().size());
        CHECK(val == 2 * static_cast<int>(G.edges().size()) + loose);
        CHECK(components(G).count == oracle::component_count(G));
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("DOT output matches the goldens") {
    const std::string dir = std::string(LINEPAT_SOURCE_DIR) + "/tests/golden/";
    struct Case {
        const char* file;
        std::vector<std::string> words;
        std::string support;
    };
    const std::vector<Case> cases = {
        {"wh_a.dot", {"a"}, "1"},
        {"wh_abb.dot", {"abb"}, "1"},
        {"wh_abAB.dot", {"abAB"}, "1"},
        {"wh_aabaaBB.dot", {"aabaaBB"}, "1"},
        {"wh_ab_aB.dot", {"ab", "aB"}, "1"},
        {"wh_ab_aB_seg_a.dot", {"ab", "aB"}, "a"},
    };
    for (const auto& c : cases) {
        auto P = make_pattern(c.words);
        auto X = c.support == "1" ? Subtree::single(Word{}) : Subtree::segment(Word{}, F2.parse(c.support));
        std::string dot = to_dot(wh_over(P, X), P);
        std::string want = slurp(dir + c.file);
        INFO(std::string(c.file));
        CHECK(dot == want);
    }
}

TEST_CASE("DOT output is deterministic and draws loose ends") {
    auto P = make_pattern({"b", "abAB"});
    auto G = delete_node(wh_at_vertex(P, Word{}), at1(b));
    std::string d1 = to_dot(G, P), d2 = to_dot(G, P);
    CHECK(d1 == d2);
    CHECK(d1.find("style=invis") != std::string::npos);
    CHECK(d1.find("\"0:1\"") != std::string::npos);
}
