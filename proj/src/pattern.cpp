#include "linepat/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace lp {

TreeEdge TreeEdge::of(const Direction& d) {
    Word t = d.target();
    if (t.size() > d.from.size()) return TreeEdge{d.from, d.letter};
    return TreeEdge{t, d.letter.inv()};
}

TreeEdge TreeEdge::between(const Word& u, const Word& v) {
    if (tree_distance(u, v) != 1) throw Error(Errc::InvalidArgument, "vertices are not adjacent");
    if (u.size() < v.size()) return TreeEdge{u, v.back()};
    return TreeEdge{v, u.back()};
}

namespace {

std::size_t common_prefix(const Word& u, const Word& v) {
    std::size_t k = 0;
    while (k < u.size() && k < v.size() && u[k] == v[k]) ++k;
    return k;
}

}  // namespace

int tree_distance(const Word& u, const Word& v) {
    std::size_t k = common_prefix(u, v);
    return static_cast<int>(u.size() + v.size() - 2 * k);
}

std::vector<Word> geodesic(const Word& u, const Word& v) {
    std::size_t k = common_prefix(u, v);
    std::vector<Word> path;
    for (std::size_t len = u.size(); len > k; --len) path.push_back(u.prefix(len));
    for (std::size_t len = k; len <= v.size(); ++len) path.push_back(v.prefix(len));
    return path;
}

Subtree::Subtree(std::vector<Word> vertices) : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    if (vertices_.empty()) throw Error(Errc::InvalidArgument, "subtree must be nonempty");
    std::size_t edges = 0;
    for (const auto& v : vertices_)
        if (!v.empty() && contains(v.prefix(v.size() - 1))) ++edges;
    if (edges + 1 != vertices_.size()) throw Error(Errc::InvalidArgument, "subtree must be connected");
}

bool Subtree::contains(const Word& v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

Subtree Subtree::ball(const Word& center, int radius, int rank) {
    std::vector<Word> out{center};
    std::vector<Word> layer{center};
    for (int r = 0; r < radius; ++r) {
        std::vector<Word> next;
        for (const auto& v : layer)
            for (int c = 0; c < 2 * rank; ++c) {
                Word t = v.times(Letter{static_cast<std::uint8_t>(c)});
                if (tree_distance(t, center) == r + 1) next.push_back(t);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return Subtree(std::move(out));
}

Subtree Subtree::segment(const Word& u, const Word& v) { return Subtree(geodesic(u, v)); }

Subtree Subtree::hull(const std::vector<Word>& points) {
    if (points.empty()) throw Error(Errc::InvalidArgument, "hull of nothing");
    std::vector<Word> out;
    for (const auto& p : points) {
        auto path = geodesic(points.front(), p);
        out.insert(out.end(), path.begin(), path.end());
    }
    return Subtree(std::move(out));
}

std::vector<Direction> Subtree::frontier(int rank) const {
    std::vector<Direction> out;
    for (const auto& v : vertices_)
        for (int c = 0; c < 2 * rank; ++c) {
            Letter x{static_cast<std::uint8_t>(c)};
            if (!contains(v.times(x))) out.push_back(Direction{v, x});
        }
    return out;
}

int Subtree::degree(const Word& v, int rank) const {
    int d = 0;
    for (int c = 0; c < 2 * rank; ++c)
        if (contains(v.times(Letter{static_cast<std::uint8_t>(c)}))) ++d;
    return d;
}

std::vector<Word> Subtree::leaves(int rank) const {
    std::vector<Word> out;
    if (vertices_.size() < 2) return out;
    for (const auto& v : vertices_)
        if (degree(v, rank) == 1) out.push_back(v);
    return out;
}

int Subtree::diameter() const {
    int best = 0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            best = std::max(best, tree_distance(vertices_[i], vertices_[j]));
    return best;
}

Subtree Subtree::translate(const Word& h) const {
    std::vector<Word> out;
    out.reserve(vertices_.size());
    for (const auto& v : vertices_) out.push_back(h * v);
    return Subtree(std::move(out));
}

Direction Subtree::direction_toward(const Word& u) const {
    if (contains(u)) throw Error(Errc::InvalidArgument, "vertex lies in the subtree");
    auto path = geodesic(u, vertices_.front());
    for (std::size_t i = 1; i < path.size(); ++i)
        if (contains(path[i])) {
            const Word& inside = path[i];
            const Word& outside = path[i - 1];
            Letter x = outside.size() > inside.size() ? outside.back() : inside.back().inv();
            return Direction{inside, x};
        }
    throw Error(Errc::Internal, "geodesic never enters subtree");
}

LinePattern::LinePattern(Basis basis, std::vector<CyclicWord> generators)
    : basis_(std::move(basis)), gens_(std::move(generators)) {
    if (gens_.empty()) throw Error(Errc::EmptyPattern, "pattern has no generators");
    for (int i = 0; i < static_cast<int>(gens_.size()); ++i) {
        const Word& w = gens_[i].word();
        for (Letter x : w.letters())
            if (x.index() >= basis_.rank()) throw Error(Errc::InvalidArgument, "generator uses a letter outside the basis");
        const std::size_t L = w.size();
        for (std::size_t j = 0; j < L; ++j) {
            Crossing c;
            c.gen = i;
            c.pos = static_cast<int>(j);
            c.in = w[(j + L - 1) % L].inv();
            c.out = w[j];
            Word offset = w.prefix(j).inverse();
            c.line = canonicalize(i, offset);
            entries_.push_back(c);
            offsets_.push_back(offset);
        }
    }
}

Line LinePattern::canonicalize(int gen, const Word& g) const {
    const Word& w = gens_.at(gen).word();
    const long L = static_cast<long>(w.size());
    const long K = static_cast<long>(g.size()) / L + 2;
    Word cur = g * w.power(-K);
    Word best = cur;
    for (long k = -K + 1; k <= K; ++k) {
        cur = cur * w;
        if (shortlex_less(cur, best)) best = cur;
    }
    return Line{gen, best};
}

std::vector<Crossing> LinePattern::lines_through_vertex(const Word& v) const {
    std::vector<Crossing> out = entries_;
    if (v.empty()) return out;
    for (std::size_t k = 0; k < out.size(); ++k) out[k].line = canonicalize(out[k].gen, v * offsets_[k]);
    return out;
}

std::vector<Line> LinePattern::lines_through_edge(const TreeEdge& e) const {
    std::vector<Line> out;
    for (std::size_t k = 0; k < entries_.size(); ++k)
        if (entries_[k].uses(e.letter)) out.push_back(canonicalize(entries_[k].gen, e.base * offsets_[k]));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Letter i of w^infinity (forward) or of (w^-1)^infinity (backward).
Letter ray_letter(const Word& w, std::size_t i, bool forward) {
    const std::size_t L = w.size();
    if (forward) return w[i % L];
    return w[L - 1 - (i % L)].inv();
}

}  // namespace

Word LinePattern::line_vertex(const Line& l, long t) const {
    const Word& w = gens_.at(l.gen).word();
    std::vector<Letter> seq;
    const bool fwd = t >= 0;
    const std::size_t n = static_cast<std::size_t>(fwd ? t : -t);
    seq.reserve(n);
    for (std::size_t i = 0; i < n; ++i) seq.push_back(ray_letter(w, i, fwd));
    return l.rep * Word::from_reduced(std::move(seq));
}

long LinePattern::project_position(const Line& l, const Word& v) const {
    const Word& w = gens_.at(l.gen).word();
    Word x = l.rep.inverse() * v;
    std::size_t f = 0, b = 0;
    while (f < x.size() && x[f] == ray_letter(w, f, true)) ++f;
    while (b < x.size() && x[b] == ray_letter(w, b, false)) ++b;
    if (f > 0) return static_cast<long>(f);
    return -static_cast<long>(b);
}

std::optional<long> LinePattern::line_position(const Line& l, const Word& v) const {
    long t = project_position(l, v);
    Word x = l.rep.inverse() * v;
    if (static_cast<std::size_t>(t < 0 ? -t : t) == x.size()) return t;
    return std::nullopt;
}

std::vector<std::vector<Word>> LinePattern::line_segment_in(const Line& l, const Subtree& X) const {
    std::vector<std::pair<long, Word>> hits;
    for (const auto& v : X.vertices())
        if (auto t = line_position(l, v)) hits.emplace_back(*t, v);
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::vector<Word>> arcs;
    for (std::size_t i = 0; i < hits.size(); ++i) {
        if (i == 0 || hits[i].first != hits[i - 1].first + 1) arcs.emplace_back();
        arcs.back().push_back(hits[i].second);
    }
    return arcs;
}

std::optional<int> LinePattern::generator_index(const CyclicWord& g) const {
    for (int i = 0; i < static_cast<int>(gens_.size()); ++i)
        if (gens_[i] == g) return i;
    return std::nullopt;
}

std::string LinePattern::format(const Line& l) const {
    return std::to_string(l.gen) + ":" + basis_.format(l.rep);
}

std::string LinePattern::describe() const {
    std::string out = "{";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (i) out += ", ";
        out += basis_.format(gens_[i].word());
    }
    return out + "}";
}

Word Axis::vertex(long k) const {
    const Word& w = g_.word();
    std::vector<Letter> seq;
    const bool fwd = k >= 0;
    const std::size_t n = static_cast<std::size_t>(fwd ? k : -k);
    for (std::size_t i = 0; i < n; ++i) seq.push_back(ray_letter(w, i, fwd));
    return base_ * Word::from_reduced(std::move(seq));
}

Axis hull_of_pair(const CyclicWord& g, const Word& base) { return Axis(g, base); }

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

PatternLoad load_pattern_text(const std::string& text, const LoadOptions& opts) {
    struct Raw {
        int line_no;
        std::string token;
    };
    std::vector<Raw> raws;
    std::optional<int> rank = opts.rank;
    std::optional<std::string> names = opts.basis_names;
    std::optional<int> dir_rank;
    std::optional<std::string> dir_names;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = line;
        auto hash = body.find('#');
        if (hash != std::string::npos) {
            std::string comment = body.substr(hash);
            body = body.substr(0, hash);
            if (comment.rfind("#@", 0) == 0) {
                std::istringstream ds(comment.substr(2));
                std::string key, value;
                ds >> key >> value;
                if (key == "rank") {
                    try {
                        dir_rank = std::stoi(value);
                    } catch (...) {
                        throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": bad rank directive");
                    }
                } else if (key == "basis") {
                    dir_names = value;
                } else {
                    throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": unknown directive '" + key + "'");
                }
            }
        }
        body = trim(body);
        if (body.empty()) continue;
        for (char c : body)
            if (!std::isalpha(static_cast<unsigned char>(c)) && c != '1')
                throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": unexpected character '" +
                                             std::string(1, c) + "'");
        raws.push_back({line_no, body});
    }
    if (raws.empty()) throw Error(Errc::EmptyPattern, "pattern file contains no words");

    if (!names) names = dir_names;
    if (!rank) rank = dir_rank;
    std::optional<Basis> basis;
    if (names) {
        basis.emplace(static_cast<int>(names->size()), *names);
    } else {
        int used = 0;
        for (const auto& r : raws)
            for (char c : r.token)
                if (c != '1') used = std::max(used, std::tolower(static_cast<unsigned char>(c)) - 'a' + 1);
        int n = rank ? *rank : std::max(2, used);
        if (n < used) throw Error(Errc::Parse, "rank " + std::to_string(n) + " is smaller than the letters used");
        basis.emplace(n);
    }
    if (rank && *rank != basis->rank()) throw Error(Errc::Parse, "rank directive disagrees with basis");

    PatternLoad out;
    std::vector<CyclicWord> gens;
    for (const auto& r : raws) {
        const std::string where = "line " + std::to_string(r.line_no) + ": ";
        std::vector<Letter> seq;
        for (char c : r.token) {
            if (c == '1') continue;
            auto x = basis->parse_letter(c);
            if (!x) throw Error(Errc::Parse, where + "letter '" + std::string(1, c) + "' is not in the basis");
            seq.push_back(*x);
        }
        Word w(seq);
        if (w.size() != seq.size()) out.notes.push_back(where + "freely reduced " + r.token + " to " + basis->format(w));
        if (w.empty()) throw Error(Errc::EmptyWord, where + "word reduces to the identity");
        auto cr = cyclic_reduce(w);
        if (!is_cyclically_reduced(w))
            out.notes.push_back(where + "cyclically reduced " + basis->format(w) + " (conjugator " +
                                basis->format(cr.conjugator) + ")");
        auto root = primitive_root(cr.core);
        if (root.exponent > 1)
            out.notes.push_back(where + "replaced proper power by its root " + basis->format(root.root.word()) +
                                " (exponent " + std::to_string(root.exponent) + ")");
        if (root.root.word() != w && root.exponent == 1 && is_cyclically_reduced(w))
            out.notes.push_back(where + "canonical form of " + basis->format(w) + " is " +
                                basis->format(root.root.word()));
        if (std::find(gens.begin(), gens.end(), root.root) != gens.end()) {
            out.notes.push_back(where + "dropped duplicate generator " + basis->format(root.root.word()) +
                                " (equal up to rotation and inversion)");
            continue;
        }
        gens.push_back(root.root);
    }
    out.pattern = LinePattern(*basis, std::move(gens));
    return out;
}

PatternLoad load_pattern_file(const std::string& path, const LoadOptions& opts) {
    std::ifstream f(path);
    if (!f) throw Error(Errc::Parse, "cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return load_pattern_text(ss.str(), opts);
}

LinePattern make_pattern(const std::vector<std::string>& words, int rank, const std::string& names) {
    std::string text;
    for (const auto& w : words) text += w + "\n";
    LoadOptions opts;
    if (rank > 0) opts.rank = rank;
    if (!names.empty()) opts.basis_names = names;
    return load_pattern_text(text, opts).pattern;
}

}  // namespace lp
