#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linepat/words.hpp"

namespace lp {

// The coset rep<w_gen>, rep being its shortest element (ties: lexicographic).
struct Line {
    int gen = 0;
    Word rep;

    friend bool operator==(const Line&, const Line&) = default;
    friend auto operator<=>(const Line&, const Line&) = default;
};

struct LineHash {
    std::size_t operator()(const Line& l) const noexcept {
        return WordHash{}(l.rep) * 31u + static_cast<std::size_t>(l.gen);
    }
};

// A directed tree edge leaving `from` along `letter`; stands for the shadow behind it.
struct Direction {
    Word from;
    Letter letter;

    Word target() const { return from.times(letter); }
    Direction reversed() const { return Direction{target(), letter.inv()}; }

    friend bool operator==(const Direction&, const Direction&) = default;
    friend auto operator<=>(const Direction&, const Direction&) = default;
};

// Undirected tree edge stored with its shorter endpoint as base.
struct TreeEdge {
    Word base;
    Letter letter;

    static TreeEdge of(const Direction& d);
    static TreeEdge between(const Word& u, const Word& v);
    Word tip() const { return base.times(letter); }
    Direction outward() const { return Direction{base, letter}; }

    friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
    friend auto operator<=>(const TreeEdge&, const TreeEdge&) = default;
};

int tree_distance(const Word& u, const Word& v);
// Vertex path from u to v inclusive.
std::vector<Word> geodesic(const Word& u, const Word& v);

class Subtree {
public:
    Subtree() = default;
    // Throws InvalidArgument unless the set is nonempty and connected.
    explicit Subtree(std::vector<Word> vertices);

    static Subtree single(const Word& v) { return Subtree(std::vector<Word>{v}); }
    static Subtree ball(const Word& center, int radius, int rank);
    static Subtree segment(const Word& u, const Word& v);
    static Subtree hull(const std::vector<Word>& points);

    const std::vector<Word>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    bool contains(const Word& v) const;
    // Frontier directions (v, x) with v in the subtree and vx outside, sorted.
    std::vector<Direction> frontier(int rank) const;
    std::vector<Word> leaves(int rank) const;
    int degree(const Word& v, int rank) const;
    int diameter() const;
    Subtree translate(const Word& h) const;
    // First edge from the subtree toward an outside vertex.
    Direction direction_toward(const Word& u) const;

    friend bool operator==(const Subtree&, const Subtree&) = default;

private:
    std::vector<Word> vertices_;  // sorted, unique
};

struct Crossing {
    Line line;
    Letter in;   // Whitehead vertex x̄_j: direction back along the line
    Letter out;  // Whitehead vertex x_{j+1}: direction forward
    int gen = 0;
    int pos = 0;  // cyclic position j

    bool uses(Letter d) const { return in == d || out == d; }
    Letter other(Letter d) const { return in == d ? out : in; }
};

class LinePattern {
public:
    LinePattern() = default;
    // Generators must already be canonical, primitive and pairwise distinct.
    LinePattern(Basis basis, std::vector<CyclicWord> generators);

    const Basis& basis() const { return basis_; }
    int rank() const { return basis_.rank(); }
    const std::vector<CyclicWord>& generators() const { return gens_; }
    const CyclicWord& generator(int i) const { return gens_.at(i); }
    int complexity() const { return static_cast<int>(entries_.size()); }

    Line canonicalize(int gen, const Word& g) const;
    Line translate(const Word& h, const Line& l) const { return canonicalize(l.gen, h * l.rep); }

    // One entry per (generator, cyclic position), in that order.
    std::vector<Crossing> lines_through_vertex(const Word& v) const;
    std::vector<Line> lines_through_edge(const TreeEdge& e) const;

    // Entries at the identity; entry k's line at v is canonicalize(gen, v * offset(k)).
    const std::vector<Crossing>& identity_crossings() const { return entries_; }
    const Word& entry_offset(int k) const { return offsets_[k]; }

    // Geometry of a line: vertex at signed position t (rep at 0).
    Word line_vertex(const Line& l, long t) const;
    std::optional<long> line_position(const Line& l, const Word& v) const;
    long project_position(const Line& l, const Word& v) const;
    Word project(const Line& l, const Word& v) const { return line_vertex(l, project_position(l, v)); }
    bool on_line(const Line& l, const Word& v) const { return line_position(l, v).has_value(); }
    // Maximal vertex paths of the line inside X (ordered along the line).
    std::vector<std::vector<Word>> line_segment_in(const Line& l, const Subtree& X) const;

    // Index of the generator whose axis is the axis of g (cyclically reduced, primitive), if any.
    std::optional<int> generator_index(const CyclicWord& g) const;

    std::string format(const Line& l) const;
    std::string describe() const;

    friend bool operator==(const LinePattern& a, const LinePattern& b) {
        return a.basis_ == b.basis_ && a.gens_ == b.gens_;
    }

private:
    Basis basis_;
    std::vector<CyclicWord> gens_;
    std::vector<Crossing> entries_;
    std::vector<Word> offsets_;
};

// Left-infinite/right-infinite axis of a cyclically reduced g through base.
class Axis {
public:
    Axis(CyclicWord g, Word base) : g_(std::move(g)), base_(std::move(base)) {}
    Word vertex(long k) const;
    const CyclicWord& element() const { return g_; }

private:
    CyclicWord g_;
    Word base_;
};

Axis hull_of_pair(const CyclicWord& g, const Word& base);

struct PatternLoad {
    LinePattern pattern;
    std::vector<std::string> notes;  // one per normalization performed
};

struct LoadOptions {
    std::optional<int> rank;
    std::optional<std::string> basis_names;
};

// Parses the pattern text format.  Directives: "#@ rank N" and "#@ basis xyz".
PatternLoad load_pattern_text(const std::string& text, const LoadOptions& opts = {});
PatternLoad load_pattern_file(const std::string& path, const LoadOptions& opts = {});
// Convenience for code and tests: words in the text encoding.
LinePattern make_pattern(const std::vector<std::string>& words, int rank = 0, const std::string& names = "");

}  // namespace lp
