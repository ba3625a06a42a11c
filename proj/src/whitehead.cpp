#include "linepat/whitehead.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "linepat/union_find.hpp"

namespace lp {

namespace {

WhEdge make_edge(Line line, WhEnd a, WhEnd b) {
    if (b < a) std::swap(a, b);
    return WhEdge{std::move(line), std::move(a), std::move(b)};
}

}  // namespace

WhGraph::WhGraph(Subtree support, std::vector<Direction> nodes, std::vector<WhEdge> edges)
    : support_(std::move(support)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
    std::sort(nodes_.begin(), nodes_.end());
    for (auto& e : edges_)
        if (e.b < e.a) std::swap(e.a, e.b);
    std::sort(edges_.begin(), edges_.end());
}

int WhGraph::node_index(const Direction& d) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), d);
    if (it == nodes_.end() || !(*it == d)) return -1;
    return static_cast<int>(it - nodes_.begin());
}

int WhGraph::valence(const Direction& d) const {
    int v = 0;
    for (const auto& e : edges_) v += (e.a.at == d) + (e.b.at == d);
    return v;
}

std::vector<LooseEnd> WhGraph::loose_ends() const {
    std::vector<LooseEnd> out;
    for (const auto& e : edges_) {
        if (e.a.loose) out.push_back({e.a.at, e.line});
        if (e.b.loose) out.push_back({e.b.at, e.line});
    }
    return out;
}

std::vector<Line> WhGraph::lines_at(const Direction& d) const {
    std::vector<Line> out;
    for (const auto& e : edges_)
        if (e.a.at == d || e.b.at == d) out.push_back(e.line);
    std::sort(out.begin(), out.end());
    return out;
}

WhGraph wh_at_vertex(const LinePattern& P, const Word& v) {
    return wh_over(P, Subtree::single(v));
}

WhGraph wh_over(const LinePattern& P, const Subtree& X) {
    std::map<Line, std::vector<Direction>> hits;
    for (const auto& v : X.vertices()) {
        for (const auto& c : P.lines_through_vertex(v)) {
            for (Letter d : {c.in, c.out})
                if (!X.contains(v.times(d))) hits[c.line].push_back(Direction{v, d});
        }
    }
    std::vector<WhEdge> edges;
    for (auto& [line, dirs] : hits) {
        if (dirs.size() != 2) throw Error(Errc::Internal, "line does not cross the subtree exactly once");
        edges.push_back(make_edge(line, WhEnd{dirs[0], false}, WhEnd{dirs[1], false}));
    }
    return WhGraph(X, X.frontier(P.rank()), std::move(edges));
}

WhGraph splice(const WhGraph& G, const WhGraph& H, const TreeEdge& across) {
    const Word u = across.base, w = across.tip();
    const bool g_has_u = G.support().contains(u);
    const Word& gv = g_has_u ? u : w;
    const Word& hv = g_has_u ? w : u;
    if (!G.support().contains(gv) || !H.support().contains(hv))
        throw Error(Errc::SupportsNotAdjacent, "edge does not join the two supports");
    for (const auto& v : G.support().vertices())
        if (H.support().contains(v)) throw Error(Errc::SupportsNotAdjacent, "supports overlap");
    const Letter x = g_has_u ? across.letter : across.letter.inv();
    const Direction dg{gv, x}, dh{hv, x.inv()};

    std::map<Line, WhEnd> g_far, h_far;
    std::vector<WhEdge> edges;
    auto collect = [&](const WhGraph& K, const Direction& d, std::map<Line, WhEnd>& far) {
        for (const auto& e : K.edges()) {
            if (e.a.at == d)
                far[e.line] = e.b;
            else if (e.b.at == d)
                far[e.line] = e.a;
            else
                edges.push_back(e);
        }
    };
    collect(G, dg, g_far);
    collect(H, dh, h_far);
    if (g_far.size() != h_far.size()) throw Error(Errc::LineMismatch, "spliced nodes carry different lines");
    for (const auto& [line, end] : g_far) {
        auto it = h_far.find(line);
        if (it == h_far.end()) throw Error(Errc::LineMismatch, "a line is missing across the splice");
        edges.push_back(make_edge(line, end, it->second));
    }
    std::vector<Word> verts = G.support().vertices();
    verts.insert(verts.end(), H.support().vertices().begin(), H.support().vertices().end());
    std::vector<Direction> nodes;
    for (const auto& d : G.nodes())
        if (!(d == dg)) nodes.push_back(d);
    for (const auto& d : H.nodes())
        if (!(d == dh)) nodes.push_back(d);
    return WhGraph(Subtree(std::move(verts)), std::move(nodes), std::move(edges));
}

WhGraph delete_node(const WhGraph& G, const Direction& d) {
    if (!G.has_node(d)) throw Error(Errc::NotANode, "direction is not a node of the graph");
    std::vector<Direction> nodes;
    for (const auto& n : G.nodes())
        if (!(n == d)) nodes.push_back(n);
    std::vector<WhEdge> edges = G.edges();
    for (auto& e : edges) {
        if (e.a.at == d) e.a.loose = true;
        if (e.b.at == d) e.b.loose = true;
    }
    return WhGraph(G.support(), std::move(nodes), std::move(edges));
}

WhGraph delete_lines(const WhGraph& G, const std::set<Line>& S) {
    std::vector<WhEdge> edges;
    for (const auto& e : G.edges())
        if (!S.count(e.line)) edges.push_back(e);
    return WhGraph(G.support(), G.nodes(), std::move(edges));
}

WhGraph delete_line_closed(const WhGraph& G, const Line& l) {
    const WhEdge* hit = nullptr;
    for (const auto& e : G.edges())
        if (e.line == l) hit = &e;
    if (!hit) throw Error(Errc::NoSuchEdge, "no edge carries that line");
    WhEdge e = *hit;
    WhGraph out = delete_lines(G, {l});
    for (const WhEnd& end : {e.a, e.b})
        if (!end.loose && out.has_node(end.at)) out = delete_node(out, end.at);
    return out;
}

Components components(const WhGraph& G) {
    const int N = static_cast<int>(G.nodes().size());
    const int E = static_cast<int>(G.edges().size());
    UnionFind uf(N + E);
    for (int i = 0; i < E; ++i) {
        const auto& e = G.edges()[i];
        for (const WhEnd* end : {&e.a, &e.b}) {
            if (end->loose) continue;
            int k = G.node_index(end->at);
            if (k < 0) throw Error(Errc::Internal, "edge attached to a missing node");
            uf.unite(N + i, k);
        }
    }
    Components C;
    std::map<int, int> id;
    auto comp_of = [&](int x) {
        auto [it, fresh] = id.emplace(uf.find(x), static_cast<int>(id.size()));
        return it->second;
    };
    C.node_comp.resize(N);
    C.edge_comp.resize(E);
    for (int k = 0; k < N; ++k) C.node_comp[k] = comp_of(k);
    for (int i = 0; i < E; ++i) C.edge_comp[i] = comp_of(N + i);
    C.count = static_cast<int>(id.size());
    C.nodes_of.assign(C.count, {});
    C.edges_of.assign(C.count, {});
    for (int k = 0; k < N; ++k) C.nodes_of[C.node_comp[k]].push_back(k);
    for (int i = 0; i < E; ++i) C.edges_of[C.edge_comp[i]].push_back(i);
    return C;
}

std::vector<Direction> cut_vertices(const WhGraph& G) {
    const auto C = components(G);
    std::vector<Direction> out;
    const int N = static_cast<int>(G.nodes().size());
    for (int d = 0; d < N; ++d) {
        const int comp = C.node_comp[d];
        if (C.nodes_of[comp].size() < 3) continue;
        UnionFind uf(N);
        for (const auto& e : G.edges()) {
            if (e.a.loose || e.b.loose) continue;
            int i = G.node_index(e.a.at), j = G.node_index(e.b.at);
            if (i == d || j == d) continue;
            uf.unite(i, j);
        }
        std::set<int> roots;
        for (int k : C.nodes_of[comp])
            if (k != d) roots.insert(uf.find(k));
        if (roots.size() > 1) out.push_back(G.nodes()[d]);
    }
    return out;
}

std::vector<int> free_edge_components(const WhGraph& G, const Components& C) {
    std::vector<int> out;
    for (int c = 0; c < C.count; ++c)
        if (C.nodes_of[c].empty() && C.edges_of[c].size() == 1) {
            const auto& e = G.edges()[C.edges_of[c][0]];
            if (e.a.loose && e.b.loose) out.push_back(c);
        }
    return out;
}

std::vector<int> free_edge_components(const WhGraph& G) { return free_edge_components(G, components(G)); }

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out + "\"";
}

}  // namespace

std::string to_dot(const WhGraph& G, const LinePattern& P, const std::string& name) {
    const Basis& B = P.basis();
    std::ostringstream os;
    os << "graph " << dot_quote(name) << " {\n";
    os << "  node [shape=circle];\n";
    for (std::size_t k = 0; k < G.nodes().size(); ++k)
        os << "  n" << k << " [label=" << dot_quote(B.format(G.nodes()[k].target())) << "];\n";
    int loose = 0;
    for (const auto& e : G.edges()) {
        auto ref = [&](const WhEnd& end) {
            if (!end.loose) return "n" + std::to_string(G.node_index(end.at));
            std::string id = "l" + std::to_string(loose++);
            os << "  " << id << " [shape=point, style=invis, label=" << dot_quote(B.format(end.at.target()))
               << "];\n";
            return id;
        };
        std::string a = ref(e.a), b = ref(e.b);
        os << "  " << a << " -- " << b << " [label=" << dot_quote(P.format(e.line)) << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace lp
