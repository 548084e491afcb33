#pragma once

// Shared helpers for the test binaries: a brute-force counter that works on
// plain strings and never touches the library's walker, and a seeded
// generator of small random specs.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sft/errors.hpp"
#include "sft/langmodel.hpp"
#include "sft/spectral.hpp"

namespace testing_support {

struct NaiveSpec {
    std::string alphabet;  // one character per symbol
    std::vector<std::string> forbidden;
    std::vector<std::pair<std::string, unsigned>> repeated;
};

inline NaiveSpec to_naive(const sft::ShiftSpec& spec) {
    NaiveSpec n;
    for (const auto& t : spec.alphabet.tokens()) n.alphabet += t;
    for (const auto& a : spec.forbidden) n.forbidden.push_back(spec.render(a));
    for (const auto& r : spec.repeated)
        n.repeated.emplace_back(spec.render(r.word), static_cast<unsigned>(r.multiplicity));
    return n;
}

inline bool has_sub(const std::string& w, const std::string& s) { return w.find(s) != std::string::npos; }

inline bool ends(const std::string& w, const std::string& s) {
    return w.size() >= s.size() && w.compare(w.size() - s.size(), s.size(), s) == 0;
}

inline mpz_class naive_raw_mult(const NaiveSpec& s, const std::string& w) {
    mpz_class m = 1;
    for (const auto& [r, mult] : s.repeated)
        for (std::size_t i = 0; i + r.size() <= w.size(); ++i)
            if (w.compare(i, r.size(), r) == 0) m *= mult;
    return m;
}

inline bool naive_allowed(const NaiveSpec& s, const std::string& w) {
    for (const auto& a : s.forbidden)
        if (has_sub(w, a)) return false;
    return true;
}

inline std::vector<std::string> all_strings(const std::string& alphabet, std::size_t n) {
    std::vector<std::string> out{""};
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::string> next;
        for (const auto& w : out)
            for (char c : alphabet) next.push_back(w + c);
        out.swap(next);
    }
    return out;
}

struct NaiveCounts {
    std::vector<mpz_class> f;
    std::vector<std::vector<mpz_class>> g;
    std::vector<std::vector<mpz_class>> fa;
    std::vector<std::size_t> words;  // plain number of allowed words
};

// Sums over every string of each length; exponential, meant for n <= 10.
inline NaiveCounts naive_counts(const NaiveSpec& s, std::size_t n_max) {
    NaiveCounts c;
    c.f.assign(n_max + 1, 0);
    c.g.assign(s.repeated.size(), std::vector<mpz_class>(n_max + 1, 0));
    c.fa.assign(s.forbidden.size(), std::vector<mpz_class>(n_max + 1, 0));
    c.words.assign(n_max + 1, 0);
    c.f[0] = 1;
    c.words[0] = 1;
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (const auto& w : all_strings(s.alphabet, n)) {
            const auto m = naive_raw_mult(s, w);
            if (naive_allowed(s, w)) {
                c.f[n] += m;
                ++c.words[n];
                for (std::size_t j = 0; j < s.repeated.size(); ++j)
                    if (ends(w, s.repeated[j].first)) c.g[j][n] += m;
                continue;
            }
            if (!naive_allowed(s, w.substr(0, n - 1))) continue;
            for (std::size_t i = 0; i < s.forbidden.size(); ++i)
                if (ends(w, s.forbidden[i])) c.fa[i][n] += m / naive_raw_mult(s, s.forbidden[i]);
        }
    }
    return c;
}

struct RandomSpecOptions {
    std::size_t max_q = 3;
    std::size_t max_words = 4;
    std::size_t max_len = 4;
    std::uint64_t max_mult = 4;
    bool require_irreducible = true;
};

// Draws until the spec validates (and is irreducible when asked).
inline sft::ShiftSpec random_spec(std::mt19937_64& rng, const RandomSpecOptions& o = {}) {
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    for (;;) {
        const auto q = pick(2, o.max_q);
        std::vector<std::string> alphabet;
        for (std::size_t k = 0; k < q; ++k) alphabet.push_back(std::string(1, static_cast<char>('0' + k)));
        auto word = [&](std::size_t min_len) {
            std::string w;
            const auto len = pick(min_len, o.max_len);
            for (std::size_t k = 0; k < len; ++k) w += static_cast<char>('0' + pick(0, q - 1));
            return w;
        };
        const auto total = pick(1, o.max_words);
        std::vector<std::string> forbidden;
        std::vector<std::pair<std::string, std::uint64_t>> repeated;
        for (std::size_t k = 0; k < total; ++k) {
            if (pick(0, 1))
                forbidden.push_back(word(2));
            else
                repeated.emplace_back(word(1), pick(2, o.max_mult));
        }
        try {
            auto spec = sft::make_spec(alphabet, forbidden, repeated);
            if (o.require_irreducible && !sft::is_irreducible(sft::build_adjacency(spec))) continue;
            return spec;
        } catch (const sft::Error&) {
            continue;
        }
    }
}

}  // namespace testing_support
