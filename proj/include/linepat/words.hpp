#pragma once

// Free-group words over a basis a_1..a_n.  Letters are packed as
// code = 2*index + (inverse ? 1 : 0) with a 0-based index, so the natural
// order of codes is a < A < b < B < ...

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linepat/error.hpp"

namespace lp {

struct Letter {
    std::uint8_t code = 0;

    static constexpr Letter gen(int index, bool inverse = false) {
        return Letter{static_cast<std::uint8_t>(2 * index + (inverse ? 1 : 0))};
    }
    constexpr int index() const { return code >> 1; }
    constexpr int sign() const { return (code & 1) ? -1 : +1; }
    constexpr bool is_inverse() const { return code & 1; }
    constexpr Letter inv() const { return Letter{static_cast<std::uint8_t>(code ^ 1)}; }

    friend constexpr auto operator<=>(Letter, Letter) = default;
};

class Word {
public:
    Word() = default;
    // Freely reduces the given sequence.
    explicit Word(const std::vector<Letter>& seq);
    Word(std::initializer_list<Letter> seq) : Word(std::vector<Letter>(seq)) {}

    static Word from_reduced(std::vector<Letter> letters);  // caller guarantees reduced

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    Letter front() const { return letters_.front(); }
    Letter back() const { return letters_.back(); }

    Word inverse() const;
    Word prefix(std::size_t len) const;
    Word suffix_from(std::size_t pos) const;
    Word power(long k) const;

    // Right multiplication by a single letter, with cancellation.
    Word times(Letter x) const;

    friend Word operator*(const Word& u, const Word& v);
    friend bool operator==(const Word&, const Word&) = default;
    // Lexicographic on letter codes, a proper prefix sorts first.
    friend std::strong_ordering operator<=>(const Word& u, const Word& v) {
        return u.letters_ <=> v.letters_;
    }

private:
    std::vector<Letter> letters_;
};

// Shortlex comparison: shorter first, then lexicographic.
bool shortlex_less(const Word& u, const Word& v);

Word reduce(const std::vector<Letter>& seq);

class CyclicWord {
public:
    CyclicWord() = default;
    // Canonicalizes: the input must be nonempty and cyclically reduced.
    explicit CyclicWord(const Word& cyclically_reduced);

    const Word& word() const { return w_; }
    std::size_t size() const { return w_.size(); }
    Letter operator[](std::size_t i) const { return w_[i]; }

    friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
    friend auto operator<=>(const CyclicWord& a, const CyclicWord& b) { return a.w_ <=> b.w_; }

private:
    Word w_;
};

bool is_cyclically_reduced(const Word& w);

// Lexicographically least rotation of w (no inversion).
Word least_rotation(const Word& w);
// Least over rotations of w and of its inverse.
Word canonical_cyclic(const Word& w);

struct CyclicReduction {
    CyclicWord core;     // canonical form
    Word conjugator;     // w = conjugator * (inverted ? core^-1 : core) * conjugator^-1
    bool inverted = false;
};

CyclicReduction cyclic_reduce(const Word& w);

struct PrimitiveRoot {
    CyclicWord root;
    int exponent = 1;
};

PrimitiveRoot primitive_root(const CyclicWord& w);

class Basis {
public:
    explicit Basis(int rank = 2);
    Basis(int rank, std::string names);

    int rank() const { return rank_; }
    const std::string& names() const { return names_; }
    int letter_count() const { return 2 * rank_; }
    Letter letter(int code) const { return Letter{static_cast<std::uint8_t>(code)}; }

    // Text encoding: lowercase symbol = generator, uppercase = inverse.
    // "1" or an empty string denotes the identity.
    Word parse(std::string_view text) const;
    std::string format(const Word& w) const;
    std::string format(Letter x) const;
    std::optional<Letter> parse_letter(char c) const;

    friend bool operator==(const Basis&, const Basis&) = default;

private:
    int rank_;
    std::string names_;
};

struct WhiteheadAut {
    Letter x;
    std::uint64_t Z = 0;  // bit set over letter codes

    bool contains(Letter y) const { return (Z >> y.code) & 1u; }
    bool is_valid() const { return contains(x) && !contains(x.inv()); }
    bool is_identity() const;
    // The automorphism pushing (Z \ {x}) u {x^-1} through x^-1.
    WhiteheadAut inverse() const;

    friend bool operator==(const WhiteheadAut&, const WhiteheadAut&) = default;
};

// (x, Z) with Z given as a list of letters.
WhiteheadAut make_aut(Letter x, std::initializer_list<Letter> Z);

// Order used for tie-breaking: by x, then by the sorted letter list of Z.
bool aut_less(const WhiteheadAut& a, const WhiteheadAut& b);

Word apply_aut(const WhiteheadAut& phi, const Word& w);
CyclicWord apply_aut_cyclic(const WhiteheadAut& phi, const CyclicWord& w);

std::string format_aut(const WhiteheadAut& phi, const Basis& basis);

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace lp
