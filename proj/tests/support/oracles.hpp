#pragma once

// Brute-force reference computations used by the tests.  These intentionally
// avoid the library's crossing tables: lines are walked letter by letter.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "linepat/pattern.hpp"
#include "linepat/whitehead.hpp"

namespace oracle {

using namespace lp;

// Vertex at signed position t along base * <w>.
inline Word walk(const Word& base, const Word& w, long t) {
    Word v = base;
    const long n = static_cast<long>(w.size());
    if (t >= 0) {
        for (long i = 0; i < t; ++i) v = v.times(w[i % n]);
    } else {
        Word wi = w.inverse();
        for (long i = 0; i < -t; ++i) v = v.times(wi[i % n]);
    }
    return v;
}

// Shortlex-least element over g*w^k for a generous range of k.
inline Word coset_min(const Word& g, const Word& w) {
    Word best = g;
    const long K = static_cast<long>(g.size()) + 3;
    for (long k = -K; k <= K; ++k) {
        Word c = g * w.power(k);
        if (shortlex_less(c, best)) best = c;
    }
    return best;
}

// All lines meeting X: for each vertex and each cyclic position, the coset
// holding that vertex at that phase.
inline std::set<Line> lines_meeting(const LinePattern& P, const Subtree& X) {
    std::set<Line> out;
    for (const auto& v : X.vertices())
        for (int i = 0; i < static_cast<int>(P.generators().size()); ++i) {
            const Word& w = P.generator(i).word();
            for (std::size_t j = 0; j < w.size(); ++j) {
                Word g = v * w.prefix(j).inverse();
                out.insert(Line{i, coset_min(g, w)});
            }
        }
    return out;
}

// Entry and exit directions of a line through X, found by walking it.
inline std::pair<Direction, Direction> crossing_dirs(const LinePattern& P, const Line& l, const Subtree& X) {
    const Word& w = P.generator(l.gen).word();
    const long R = static_cast<long>(X.diameter() + 4 * (w.size() + 2) + l.rep.size() * 2 + 8);
    std::vector<long> inside;
    for (long t = -R; t <= R; ++t)
        if (X.contains(walk(l.rep, w, t))) inside.push_back(t);
    long lo = inside.front(), hi = inside.back();
    Word a = walk(l.rep, w, lo), a_out = walk(l.rep, w, lo - 1);
    Word b = walk(l.rep, w, hi), b_out = walk(l.rep, w, hi + 1);
    auto dir = [](const Word& from, const Word& to) {
        Word step = from.inverse() * to;
        return Direction{from, step[0]};
    };
    return {dir(a, a_out), dir(b, b_out)};
}

// Whitehead graph over X built from the walked lines.
inline WhGraph wh_brute(const LinePattern& P, const Subtree& X) {
    std::vector<WhEdge> edges;
    for (const auto& l : lines_meeting(P, X)) {
        auto [d1, d2] = crossing_dirs(P, l, X);
        edges.push_back(WhEdge{l, WhEnd{d1, false}, WhEnd{d2, false}});
    }
    return WhGraph(X, X.frontier(P.rank()), edges);
}

inline int component_count(const WhGraph& G) {
    // plain DFS over nodes and edges
    const int N = static_cast<int>(G.nodes().size());
    const int E = static_cast<int>(G.edges().size());
    std::vector<std::vector<int>> adj(N + E);
    for (int i = 0; i < E; ++i)
        for (const WhEnd* end : {&G.edges()[i].a, &G.edges()[i].b})
            if (!end->loose) {
                int k = G.node_index(end->at);
                adj[k].push_back(N + i);
                adj[N + i].push_back(k);
            }
    std::vector<char> seen(N + E, 0);
    int count = 0;
    for (int s = 0; s < N + E; ++s) {
        if (seen[s]) continue;
        ++count;
        std::vector<int> st{s};
        seen[s] = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : adj[x])
                if (!seen[y]) seen[y] = 1, st.push_back(y);
        }
    }
    return count;
}

inline Word random_word(std::mt19937& rng, int rank, int len) {
    std::uniform_int_distribution<int> pick(0, 2 * rank - 1);
    std::vector<Letter> ls;
    while (static_cast<int>(ls.size()) < len) {
        Letter x{static_cast<std::uint8_t>(pick(rng))};
        if (!ls.empty() && ls.back() == x.inv()) continue;
        ls.push_back(x);
    }
    return Word::from_reduced(ls);
}

// Random pattern with primitive, distinct, cyclically reduced generators.
inline LinePattern random_pattern(std::mt19937& rng, int rank, int max_len, int max_gens) {
    std::uniform_int_distribution<int> len(1, max_len), count(1, max_gens);
    std::set<CyclicWord> gens;
    int want = count(rng);
    for (int tries = 0; static_cast<int>(gens.size()) < want && tries < 100; ++tries) {
        Word w = random_word(rng, rank, len(rng));
        if (!is_cyclically_reduced(w)) continue;
        auto r = primitive_root(CyclicWord(w));
        gens.insert(r.root);
    }
    if (gens.empty()) gens.insert(CyclicWord(Word{Letter::gen(0)}));
    return LinePattern(Basis(rank), std::vector<CyclicWord>(gens.begin(), gens.end()));
}

// Random connected subtree grown from the identity.
inline Subtree random_subtree(std::mt19937& rng, int rank, int size) {
    std::vector<Word> verts{Word{}};
    std::uniform_int_distribution<int> pick(0, 2 * rank - 1);
    while (static_cast<int>(verts.size()) < size) {
        std::uniform_int_distribution<std::size_t> which(0, verts.size() - 1);
        Word v = verts[which(rng)].times(Letter{static_cast<std::uint8_t>(pick(rng))});
        if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
    }
    return Subtree(verts);
}

}  // namespace oracle
