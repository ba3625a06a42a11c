#pragma once

#include <set>
#include <string>
#include <vector>

#include "linepat/pattern.hpp"

namespace lp {

// One end of a Whitehead-graph edge.  A loose end keeps the direction of the
// node it was attached to before that node was deleted.
struct WhEnd {
    Direction at;
    bool loose = false;

    friend bool operator==(const WhEnd&, const WhEnd&) = default;
    friend auto operator<=>(const WhEnd&, const WhEnd&) = default;
};

struct WhEdge {
    Line line;
    WhEnd a, b;  // a <= b

    friend bool operator==(const WhEdge&, const WhEdge&) = default;
    friend auto operator<=>(const WhEdge&, const WhEdge&) = default;
};

struct LooseEnd {
    Direction at;
    Line line;
};

class WhGraph {
public:
    WhGraph() = default;
    WhGraph(Subtree support, std::vector<Direction> nodes, std::vector<WhEdge> edges);

    const Subtree& support() const { return support_; }
    const std::vector<Direction>& nodes() const { return nodes_; }
    const std::vector<WhEdge>& edges() const { return edges_; }
    int node_index(const Direction& d) const;  // -1 if absent
    bool has_node(const Direction& d) const { return node_index(d) >= 0; }
    int valence(const Direction& d) const;      // half-edges at d, live or loose
    std::vector<LooseEnd> loose_ends() const;
    std::vector<Line> lines_at(const Direction& d) const;  // sorted labels of half-edges at d

    // Structural equality over Line labels and frontier Directions.
    friend bool operator==(const WhGraph&, const WhGraph&) = default;

private:
    Subtree support_;
    std::vector<Direction> nodes_;  // sorted
    std::vector<WhEdge> edges_;     // sorted
};

WhGraph wh_at_vertex(const LinePattern& P, const Word& v);
WhGraph wh_over(const LinePattern& P, const Subtree& X);
WhGraph splice(const WhGraph& G, const WhGraph& H, const TreeEdge& across);

WhGraph delete_node(const WhGraph& G, const Direction& d);
WhGraph delete_lines(const WhGraph& G, const std::set<Line>& S);
WhGraph delete_line_closed(const WhGraph& G, const Line& l);

struct Components {
    int count = 0;
    std::vector<int> node_comp;  // per node index
    std::vector<int> edge_comp;  // per edge index
    std::vector<std::vector<int>> nodes_of, edges_of;
};

Components components(const WhGraph& G);
std::vector<Direction> cut_vertices(const WhGraph& G);
// Component ids consisting of a single edge both of whose ends are loose.
std::vector<int> free_edge_components(const WhGraph& G, const Components& C);
std::vector<int> free_edge_components(const WhGraph& G);

std::string to_dot(const WhGraph& G, const LinePattern& P, const std::string& name = "wh");

}  // namespace lp
