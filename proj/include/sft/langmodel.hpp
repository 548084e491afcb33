#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sft/words.hpp"

namespace sft {

struct RepeatedWord {
    Word word;
    std::uint64_t multiplicity = 2;

    friend bool operator==(const RepeatedWord&, const RepeatedWord&) = default;
};

// Alphabet plus the forbidden collection F and the repeated collection R.
// Build through validate_spec (or make_spec) so the derived fields are set.
struct ShiftSpec {
    Alphabet alphabet;
    std::vector<Word> forbidden;
    std::vector<RepeatedWord> repeated;

    // Derived by validate_spec.
    std::size_t p = 0;           // longest word of F and R (0 when both are empty)
    bool union_reduced = true;   // F and R together form a reduced collection

    std::size_t q() const noexcept { return alphabet.size(); }
    // Length of the adjacency labels plus one; never below 2.
    std::size_t block_length() const noexcept { return p < 2 ? 2 : p; }
    std::vector<Word> repeated_words() const;
    std::string render(const Word& w) const { return alphabet.render(w); }

    friend bool operator==(const ShiftSpec&, const ShiftSpec&) = default;
};

// Checks every standing assumption and fills the derived fields. Throws
// SpecError listing all violations.
ShiftSpec validate_spec(ShiftSpec raw);

// Parses word strings over the given tokens and validates.
ShiftSpec make_spec(std::vector<std::string> alphabet, const std::vector<std::string>& forbidden,
                    const std::vector<std::pair<std::string, std::uint64_t>>& repeated);

bool is_allowed(const Word& w, const ShiftSpec& spec);

// m(w): 0 for forbidden words, else the product of m_j over every
// occurrence of every r_j in w.
mpz_class multiplicity(const Word& w, const ShiftSpec& spec);

// Product of m_j over occurrences of r_j in w, ignoring F.
mpz_class raw_multiplicity(const Word& w, const ShiftSpec& spec);

// Multiplicity of a word whose only forbidden occurrence is the terminal a.
mpz_class forbidden_end_multiplicity(const Word& w, const Word& a, const ShiftSpec& spec);

// m(v) / m(v without its first symbol).
mpz_class k_value(const Word& v, const ShiftSpec& spec);

struct WeightedWord {
    Word word;
    mpz_class multiplicity;
};

struct LanguageSlice {
    std::size_t n = 0;
    std::vector<WeightedWord> entries;  // lexicographic
    mpz_class cardinality;
};

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

LanguageSlice enumerate_slice(std::size_t n, const ShiftSpec& spec,
                              std::uint64_t budget = kDefaultBudget);

// Oracle counts for 0 <= n <= n_max: f[n], g[j][n] per repeated word,
// fa[i][n] per forbidden word.
struct OracleCounts {
    std::vector<mpz_class> f;
    std::vector<std::vector<mpz_class>> g;
    std::vector<std::vector<mpz_class>> fa;
};

// One depth-first pass over allowed words. Throws BudgetError once more
// than `budget` nodes would be visited.
OracleCounts oracle_counts(const ShiftSpec& spec, std::size_t n_max,
                           std::uint64_t budget = kDefaultBudget);

mpz_class f_oracle(std::size_t n, const ShiftSpec& spec, std::uint64_t budget = kDefaultBudget);
mpz_class g_oracle(std::size_t j, std::size_t n, const ShiftSpec& spec,
                   std::uint64_t budget = kDefaultBudget);
mpz_class f_a_oracle(std::size_t i, std::size_t n, const ShiftSpec& spec,
                     std::uint64_t budget = kDefaultBudget);

// Replaces R by all allowed words of length block_length() that begin with
// a word of R, each with multiplicity k(w). Identity when every word of R
// already has that length.
ShiftSpec extend_R_tilde(const ShiftSpec& spec);

}  // namespace sft
