#include "sft/words.hpp"

#include <algorithm>
#include <limits>

#include "sft/errors.hpp"

namespace sft {

Word Word::substr(std::size_t pos, std::size_t len) const {
    if (pos >= symbols_.size()) return {};
    const auto n = std::min(len, symbols_.size() - pos);
    return Word(std::vector<Symbol>(symbols_.begin() + static_cast<std::ptrdiff_t>(pos),
                                    symbols_.begin() + static_cast<std::ptrdiff_t>(pos + n)));
}

Word Word::appended(Symbol s) const {
    auto out = symbols_;
    out.push_back(s);
    return Word(std::move(out));
}

Word Word::concat(const Word& other) const {
    auto out = symbols_;
    out.insert(out.end(), other.symbols_.begin(), other.symbols_.end());
    return Word(std::move(out));
}

Word Word::reversed() const {
    return Word(std::vector<Symbol>(symbols_.rbegin(), symbols_.rend()));
}

bool Word::starts_with(const Word& prefix) const {
    return prefix.size() <= size() &&
           std::equal(prefix.begin(), prefix.end(), symbols_.begin());
}

bool Word::ends_with(const Word& suffix) const {
    return suffix.size() <= size() &&
           std::equal(suffix.begin(), suffix.end(),
                      symbols_.end() - static_cast<std::ptrdiff_t>(suffix.size()));
}

bool Word::contains(const Word& sub) const {
    if (sub.empty()) return true;
    return std::search(symbols_.begin(), symbols_.end(), sub.begin(), sub.end()) !=
           symbols_.end();
}

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty()) throw DomainError("alphabet is empty");
    if (tokens_.size() > std::numeric_limits<Symbol>::max())
        throw DomainError("alphabet too large");
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        if (tokens_[i].empty()) throw DomainError("empty alphabet token");
        for (std::size_t j = 0; j < i; ++j)
            if (tokens_[i] == tokens_[j])
                throw DomainError("duplicate alphabet token '" + tokens_[i] + "'");
    }
}

Word Alphabet::parse(std::string_view text) const {
    // ways[i] = number of token splittings of text[i..], capped at 2;
    // next[i] = token index starting a splitting of text[i..].
    const auto n = text.size();
    std::vector<int> ways(n + 1, 0);
    std::vector<int> next(n + 1, -1);
    ways[n] = 1;
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t t = 0; t < tokens_.size(); ++t) {
            const auto& tok = tokens_[t];
            if (text.substr(i, tok.size()) == tok && ways[i + tok.size()] > 0) {
                ways[i] = std::min(2, ways[i] + ways[i + tok.size()]);
                if (next[i] < 0) next[i] = static_cast<int>(t);
            }
        }
    }
    if (ways[0] == 0)
        throw DomainError("'" + std::string(text) + "' is not a word over the alphabet");
    if (ways[0] > 1)
        throw DomainError("'" + std::string(text) + "' splits into alphabet symbols ambiguously");
    Word w;
    for (std::size_t i = 0; i < n;) {
        const auto t = static_cast<Symbol>(next[i]);
        w.push_back(t);
        i += tokens_[t].size();
    }
    return w;
}

std::string Alphabet::render(const Word& w) const {
    std::string out;
    for (auto s : w) out += tokens_.at(s);
    return out;
}

std::vector<Word> Alphabet::all_words(std::size_t n) const {
    std::vector<Word> out{Word{}};
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Word> grown;
        grown.reserve(out.size() * size());
        for (const auto& w : out)
            for (std::size_t s = 0; s < size(); ++s) grown.push_back(w.appended(static_cast<Symbol>(s)));
        out = std::move(grown);
    }
    return out;
}

bool CorrelationBits::has(std::size_t t) const {
    return t >= 1 && t <= bits.size() && bits[bits.size() - t] != 0;
}

std::vector<std::size_t> CorrelationBits::positions() const {
    std::vector<std::size_t> out;
    for (std::size_t t = 1; t <= bits.size(); ++t)
        if (has(t)) out.push_back(t);
    return out;
}

std::size_t CorrelationPoly::degree() const {
    for (std::size_t k = coefficients.size(); k-- > 0;)
        if (coefficients[k] != 0) return k;
    return 0;
}

bool CorrelationPoly::is_zero() const {
    return std::all_of(coefficients.begin(), coefficients.end(),
                       [](std::int64_t c) { return c == 0; });
}

double CorrelationPoly::eval(double z) const {
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
        acc = acc * z + static_cast<double>(*it);
    return acc;
}

bool operator==(const CorrelationPoly& a, const CorrelationPoly& b) {
    const auto n = std::max(a.coefficients.size(), b.coefficients.size());
    for (std::size_t k = 0; k < n; ++k)
        if (a.coefficient(k) != b.coefficient(k)) return false;
    return true;
}

CorrelationBits correlate(const Word& u, const Word& v) {
    CorrelationBits out;
    out.bits.resize(u.size(), 0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        // v's first symbol sits under u[i]; compare the overlapping stretch.
        const auto overlap = std::min(u.size() - i, v.size());
        bool match = true;
        for (std::size_t k = 0; k < overlap && match; ++k) match = u[i + k] == v[k];
        out.bits[i] = match ? 1 : 0;
    }
    return out;
}

namespace {

CorrelationPoly poly_from_positions(const CorrelationBits& bits, std::size_t max_t) {
    CorrelationPoly p;
    p.coefficients.assign(bits.size(), 0);
    for (std::size_t t = 1; t <= std::min(max_t, bits.size()); ++t)
        if (bits.has(t)) p.coefficients[t - 1] = 1;
    return p;
}

}  // namespace

CorrelationPoly correlation_poly(const Word& u, const Word& v) {
    return poly_from_positions(correlate(u, v), u.size());
}

CorrelationPoly tail_correlation_poly(const Word& u, const Word& v, std::size_t alpha) {
    if (alpha < 1 || alpha > u.size())
        throw DomainError("tail length " + std::to_string(alpha) + " outside [1, " +
                          std::to_string(u.size()) + "]");
    return poly_from_positions(correlate(u, v), alpha);
}

std::size_t gamma(const Word& a, const Word& r) {
    return gamma_t(a, r, 0);
}

std::size_t gamma_t(const Word& a, const Word& r, std::size_t t) {
    const auto bits = correlate(a, r);
    const auto floor = std::max(r.size(), t);
    std::size_t n = 0;
    for (auto alpha : bits.positions())
        if (alpha > floor) ++n;
    return n;
}

std::optional<Word> star(const Word& x, const Word& y) {
    if (x.size() != y.size())
        throw DomainError("star needs words of equal length");
    if (x.empty()) throw DomainError("star needs non-empty words");
    if (x.size() == 1) return x.appended(y[0]);
    for (std::size_t k = 1; k < x.size(); ++k)
        if (x[k] != y[k - 1]) return std::nullopt;
    return x.appended(y.back());
}

bool is_reduced(std::span<const Word> words) {
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j)
            if (i != j && words[i] != words[j] && words[i].contains(words[j])) return false;
    return true;
}

std::size_t subword_count(const Word& w, const Word& r) {
    if (r.empty() || r.size() > w.size()) return 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i + r.size() <= w.size(); ++i)
        if (std::equal(r.begin(), r.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) ++n;
    return n;
}

}  // namespace sft
