#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sft {

// Index of a symbol in its alphabet's declared order.
using Symbol = std::uint8_t;

// A finite sequence of alphabet symbols, stored as indices into the owning
// Alphabet. Ordering is lexicographic on indices, which is the declared
// alphabet order extended to words.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}
    explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    Symbol front() const { return symbols_.front(); }
    Symbol back() const { return symbols_.back(); }

    std::span<const Symbol> symbols() const noexcept { return symbols_; }
    auto begin() const noexcept { return symbols_.begin(); }
    auto end() const noexcept { return symbols_.end(); }

    // Symbols [pos, pos + len), clamped to the word.
    Word substr(std::size_t pos, std::size_t len = static_cast<std::size_t>(-1)) const;
    Word drop_front(std::size_t k = 1) const { return substr(k); }
    Word drop_back(std::size_t k = 1) const {
        return substr(0, k >= size() ? 0 : size() - k);
    }

    Word appended(Symbol s) const;
    Word concat(const Word& other) const;
    Word reversed() const;

    bool starts_with(const Word& prefix) const;
    bool ends_with(const Word& suffix) const;
    bool contains(const Word& sub) const;

    void push_back(Symbol s) { symbols_.push_back(s); }
    void pop_back() { symbols_.pop_back(); }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;

private:
    std::vector<Symbol> symbols_;
};

// Ordered list of opaque symbol tokens. Words are written as the
// concatenation of their tokens; parsing rejects strings that do not split
// into tokens in exactly one way.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> tokens);

    std::size_t size() const noexcept { return tokens_.size(); }
    const std::vector<std::string>& tokens() const noexcept { return tokens_; }
    const std::string& token(Symbol s) const { return tokens_.at(s); }

    Word parse(std::string_view text) const;
    std::string render(const Word& w) const;

    // All q^n words of length n in lexicographic order.
    std::vector<Word> all_words(std::size_t n) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> tokens_;
};

// Correlation bit string (c_1, ..., c_|u|) of an ordered pair (u, v).
struct CorrelationBits {
    std::vector<std::uint8_t> bits;

    std::size_t size() const noexcept { return bits.size(); }
    // True iff t is an overlap position, i.e. c_{|u|-t+1} = 1, for 1 <= t <= |u|.
    bool has(std::size_t t) const;
    // Overlap positions t in ascending order.
    std::vector<std::size_t> positions() const;

    friend bool operator==(const CorrelationBits&, const CorrelationBits&) = default;
};

// Integer polynomial in z, ascending powers. Correlation polynomials have
// 0/1 coefficients; the type is reused for small integer combinations.
struct CorrelationPoly {
    std::vector<std::int64_t> coefficients;

    std::size_t degree() const;  // 0 for the zero polynomial
    bool is_zero() const;
    std::int64_t coefficient(std::size_t k) const {
        return k < coefficients.size() ? coefficients[k] : 0;
    }
    double eval(double z) const;

    friend bool operator==(const CorrelationPoly& a, const CorrelationPoly& b);
};

CorrelationBits correlate(const Word& u, const Word& v);
CorrelationPoly correlation_poly(const Word& u, const Word& v);

// Keeps only the last alpha bits of (u, v), i.e. overlap positions t <= alpha.
// Throws DomainError unless 1 <= alpha <= |u|.
CorrelationPoly tail_correlation_poly(const Word& u, const Word& v, std::size_t alpha);

// Occurrences of r inside a other than one ending at the last symbol of a.
std::size_t gamma(const Word& a, const Word& r);

// #{alpha in (a, r) : alpha > max(|r|, t)}.
std::size_t gamma_t(const Word& a, const Word& r, std::size_t t);

// X*Y for |X| = |Y|: defined when X without its first symbol equals Y
// without its last, giving X followed by the last symbol of Y. Length-1
// words always combine. Throws DomainError on a length mismatch.
std::optional<Word> star(const Word& x, const Word& y);

// No word of the collection is a subword of a different word in it.
bool is_reduced(std::span<const Word> words);

// Number of starting positions of r in w, overlaps included.
std::size_t subword_count(const Word& w, const Word& r);

}  // namespace sft
