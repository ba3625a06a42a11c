#include "linepat/words.hpp"

#include <algorithm>
#include <cctype>

namespace lp {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::EmptyWord: return "EmptyWord";
        case Errc::EmptyPattern: return "EmptyPattern";
        case Errc::Parse: return "ParseError";
        case Errc::SupportsNotAdjacent: return "SupportsNotAdjacent";
        case Errc::LineMismatch: return "LineMismatch";
        case Errc::NotANode: return "NotANode";
        case Errc::NoSuchEdge: return "NoSuchEdge";
        case Errc::Disconnected: return "Disconnected";
        case Errc::NotReduced: return "NotReduced";
        case Errc::IdentityElement: return "IdentityElement";
        case Errc::HasCutPoint: return "HasCutPoint";
        case Errc::HasCutPair: return "HasCutPair";
        case Errc::CatalogTooSmall: return "CatalogTooSmall";
        case Errc::RayHitsLine: return "RayHitsLine";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::Internal: return "InternalError";
    }
    return "Error";
}

Word reduce(const std::vector<Letter>& seq) {
    std::vector<Letter> out;
    out.reserve(seq.size());
    for (Letter x : seq) {
        if (!out.empty() && out.back() == x.inv())
            out.pop_back();
        else
            out.push_back(x);
    }
    return Word::from_reduced(std::move(out));
}

Word::Word(const std::vector<Letter>& seq) : letters_(reduce(seq).letters_) {}

Word Word::from_reduced(std::vector<Letter> letters) {
    Word w;
    w.letters_ = std::move(letters);
    return w;
}

Word Word::inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (auto& x : out) x = x.inv();
    return from_reduced(std::move(out));
}

Word Word::prefix(std::size_t len) const {
    len = std::min(len, letters_.size());
    return from_reduced(std::vector<Letter>(letters_.begin(), letters_.begin() + len));
}

Word Word::suffix_from(std::size_t pos) const {
    pos = std::min(pos, letters_.size());
    return from_reduced(std::vector<Letter>(letters_.begin() + pos, letters_.end()));
}

Word Word::power(long k) const {
    if (k == 0 || empty()) return Word();
    const Word base = k > 0 ? *this : inverse();
    const long m = k > 0 ? k : -k;
    std::vector<Letter> seq;
    seq.reserve(base.size() * m);
    for (long i = 0; i < m; ++i) seq.insert(seq.end(), base.letters_.begin(), base.letters_.end());
    return Word(seq);
}

Word Word::times(Letter x) const {
    std::vector<Letter> out = letters_;
    if (!out.empty() && out.back() == x.inv())
        out.pop_back();
    else
        out.push_back(x);
    return from_reduced(std::move(out));
}

Word operator*(const Word& u, const Word& v) {
    std::size_t k = 0;
    const std::size_t m = std::min(u.size(), v.size());
    while (k < m && u.letters_[u.size() - 1 - k] == v.letters_[k].inv()) ++k;
    std::vector<Letter> out;
    out.reserve(u.size() + v.size() - 2 * k);
    out.insert(out.end(), u.letters_.begin(), u.letters_.end() - k);
    out.insert(out.end(), v.letters_.begin() + k, v.letters_.end());
    return Word::from_reduced(std::move(out));
}

bool shortlex_less(const Word& u, const Word& v) {
    if (u.size() != v.size()) return u.size() < v.size();
    return u < v;
}

bool is_cyclically_reduced(const Word& w) {
    return w.empty() || w.size() == 1 || w.front() != w.back().inv();
}

Word least_rotation(const Word& w) {
    const auto& s = w.letters();
    const std::size_t n = s.size();
    if (n == 0) return w;
    // Booth-style scan is overkill at these lengths; compare all rotations.
    std::size_t best = 0;
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            Letter a = s[(r + i) % n], b = s[(best + i) % n];
            if (a != b) {
                if (a < b) best = r;
                break;
            }
        }
    }
    std::vector<Letter> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(s[(best + i) % n]);
    return Word::from_reduced(std::move(out));
}

Word canonical_cyclic(const Word& w) {
    Word a = least_rotation(w);
    Word b = least_rotation(w.inverse());
    return b < a ? b : a;
}

CyclicWord::CyclicWord(const Word& w) {
    if (w.empty()) throw Error(Errc::EmptyWord, "cyclic word must be nonempty");
    if (!is_cyclically_reduced(w)) throw Error(Errc::InvalidArgument, "word is not cyclically reduced");
    w_ = canonical_cyclic(w);
}

CyclicReduction cyclic_reduce(const Word& w) {
    if (w.empty()) throw Error(Errc::EmptyWord, "word reduces to the identity");
    std::size_t k = 0;
    const auto& s = w.letters();
    while (2 * k + 1 < s.size() && s[k] == s[s.size() - 1 - k].inv()) ++k;
    Word conj = w.prefix(k);
    Word core = Word::from_reduced(std::vector<Letter>(s.begin() + k, s.end() - k));
    // core = r^-1 rot r for the rotation rot = s[j..] s[..j] with r = s[..j].
    CyclicReduction out;
    out.core = CyclicWord(core);
    const Word& canon = out.core.word();
    const std::size_t n = core.size();
    for (int pass = 0; pass < 2; ++pass) {
        const Word base = pass == 0 ? core : core.inverse();
        for (std::size_t j = 0; j < n; ++j) {
            bool match = true;
            for (std::size_t i = 0; i < n && match; ++i) match = base[(j + i) % n] == canon[i];
            if (match) {
                out.conjugator = conj * base.prefix(j);
                out.inverted = pass == 1;
                return out;
            }
        }
    }
    throw Error(Errc::Internal, "canonical rotation not found");
}

PrimitiveRoot primitive_root(const CyclicWord& w) {
    const Word& s = w.word();
    const std::size_t n = s.size();
    for (std::size_t p = 1; p <= n; ++p) {
        if (n % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i) ok = s[i] == s[i - p];
        if (ok) return PrimitiveRoot{CyclicWord(s.prefix(p)), static_cast<int>(n / p)};
    }
    return PrimitiveRoot{w, 1};
}

Basis::Basis(int rank) : Basis(rank, [rank] {
    std::string s;
    for (int i = 0; i < rank && i < 26; ++i) s.push_back(static_cast<char>('a' + i));
    return s;
}()) {}

Basis::Basis(int rank, std::string names) : rank_(rank), names_(std::move(names)) {
    if (rank_ < 1) throw Error(Errc::InvalidArgument, "rank must be positive");
    if (static_cast<int>(names_.size()) != rank_ && rank_ <= 26)
        throw Error(Errc::InvalidArgument, "basis names must have one symbol per generator");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        char c = names_[i];
        if (!std::islower(static_cast<unsigned char>(c)))
            throw Error(Errc::InvalidArgument, "basis symbols must be lowercase letters");
        if (names_.find(c, i + 1) != std::string::npos)
            throw Error(Errc::InvalidArgument, "repeated basis symbol");
    }
}

std::optional<Letter> Basis::parse_letter(char c) const {
    bool inv = std::isupper(static_cast<unsigned char>(c));
    char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto pos = names_.find(lc);
    if (pos == std::string::npos) return std::nullopt;
    return Letter::gen(static_cast<int>(pos), inv);
}

Word Basis::parse(std::string_view text) const {
    std::vector<Letter> seq;
    if (text == "1") return Word();
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        auto x = parse_letter(c);
        if (!x) throw Error(Errc::Parse, std::string("unknown letter '") + c + "'");
        seq.push_back(*x);
    }
    return Word(seq);
}

std::string Basis::format(Letter x) const {
    char c = x.index() < static_cast<int>(names_.size()) ? names_[x.index()] : '?';
    if (x.is_inverse()) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return std::string(1, c);
}

std::string Basis::format(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (Letter x : w.letters()) out += format(x);
    return out;
}

bool WhiteheadAut::is_identity() const {
    return Z == (std::uint64_t{1} << x.code);
}

WhiteheadAut WhiteheadAut::inverse() const {
    WhiteheadAut r;
    r.x = x.inv();
    r.Z = (Z & ~(std::uint64_t{1} << x.code)) | (std::uint64_t{1} << x.inv().code);
    return r;
}

WhiteheadAut make_aut(Letter x, std::initializer_list<Letter> Z) {
    WhiteheadAut phi;
    phi.x = x;
    for (Letter y : Z) phi.Z |= std::uint64_t{1} << y.code;
    return phi;
}

bool aut_less(const WhiteheadAut& a, const WhiteheadAut& b) {
    if (a.x != b.x) return a.x < b.x;
    // Compare the sorted letter lists of Z lexicographically.
    std::uint64_t za = a.Z, zb = b.Z;
    while (za && zb) {
        int la = __builtin_ctzll(za), lb = __builtin_ctzll(zb);
        if (la != lb) return la < lb;
        za &= za - 1;
        zb &= zb - 1;
    }
    return za == 0 && zb != 0;
}

namespace {

// Image of a positive generator y under phi, as a letter sequence.
void push_image(const WhiteheadAut& phi, Letter y, std::vector<Letter>& out) {
    if (y.index() == phi.x.index()) {
        out.push_back(y);
        return;
    }
    Letter g = Letter::gen(y.index());
    bool in = phi.contains(g), inv_in = phi.contains(g.inv());
    std::vector<Letter> img;
    if (in) img.push_back(phi.x);
    img.push_back(g);
    if (inv_in) img.push_back(phi.x.inv());
    if (y.is_inverse()) {
        std::reverse(img.begin(), img.end());
        for (auto& z : img) z = z.inv();
    }
    out.insert(out.end(), img.begin(), img.end());
}

}  // namespace

Word apply_aut(const WhiteheadAut& phi, const Word& w) {
    if (!phi.is_valid()) throw Error(Errc::InvalidArgument, "Whitehead automorphism requires x in Z and x^-1 not in Z");
    std::vector<Letter> seq;
    seq.reserve(w.size() * 3);
    for (Letter y : w.letters()) push_image(phi, y, seq);
    return Word(seq);
}

CyclicWord apply_aut_cyclic(const WhiteheadAut& phi, const CyclicWord& w) {
    return cyclic_reduce(apply_aut(phi, w.word())).core;
}

std::string format_aut(const WhiteheadAut& phi, const Basis& basis) {
    std::string out = "(" + basis.format(phi.x) + ", {";
    bool first = true;
    for (int c = 0; c < 64; ++c) {
        if (!((phi.Z >> c) & 1u)) continue;
        if (!first) out += ",";
        out += basis.format(Letter{static_cast<std::uint8_t>(c)});
        first = false;
    }
    return out + "})";
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Letter x : w.letters()) {
        h ^= x.code + 1;
        h *= 1099511628211ull;
    }
    return h ^ w.size();
}

}  // namespace lp
