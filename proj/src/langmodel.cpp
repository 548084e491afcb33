#include "sft/langmodel.hpp"

#include <algorithm>

#include "sft/errors.hpp"

namespace sft {

std::vector<Word> ShiftSpec::repeated_words() const {
    std::vector<Word> out;
    out.reserve(repeated.size());
    for (const auto& r : repeated) out.push_back(r.word);
    return out;
}

ShiftSpec validate_spec(ShiftSpec raw) {
    std::vector<std::string> issues;
    const auto q = raw.alphabet.size();
    if (q == 0) issues.emplace_back("alphabet is empty");

    auto check_symbols = [&](const Word& w, const char* what) {
        if (w.empty()) issues.push_back(std::string("empty ") + what + " word");
        for (auto s : w)
            if (s >= q) {
                issues.push_back(std::string(what) + " word uses a symbol outside the alphabet");
                return false;
            }
        return !w.empty();
    };

    for (std::size_t i = 0; i < raw.forbidden.size(); ++i) {
        const auto& a = raw.forbidden[i];
        if (!check_symbols(a, "forbidden")) continue;
        if (a.size() == 1)
            issues.push_back("forbidden word '" + raw.alphabet.render(a) +
                             "' is a single symbol");
        for (std::size_t j = 0; j < i; ++j)
            if (raw.forbidden[j] == a)
                issues.push_back("forbidden word '" + raw.alphabet.render(a) + "' is listed twice");
    }
    if (!is_reduced(raw.forbidden)) issues.emplace_back("forbidden collection is not reduced");

    const auto rwords = raw.repeated_words();
    for (std::size_t i = 0; i < raw.repeated.size(); ++i) {
        const auto& r = raw.repeated[i];
        if (!check_symbols(r.word, "repeated")) continue;
        const auto text = raw.alphabet.render(r.word);
        if (r.multiplicity < 2)
            issues.push_back("repeated word '" + text + "' has multiplicity " +
                             std::to_string(r.multiplicity) + " < 2");
        for (std::size_t j = 0; j < i; ++j)
            if (raw.repeated[j].word == r.word)
                issues.push_back("repeated word '" + text + "' is listed twice");
        for (const auto& a : raw.forbidden)
            if (!a.empty() && r.word.contains(a))
                issues.push_back("repeated word '" + text + "' contains forbidden word '" +
                                 raw.alphabet.render(a) + "'");
    }
    if (!is_reduced(rwords)) issues.emplace_back("repeated collection is not reduced");

    if (!issues.empty()) throw SpecError(std::move(issues));

    raw.p = 0;
    for (const auto& a : raw.forbidden) raw.p = std::max(raw.p, a.size());
    for (const auto& r : rwords) raw.p = std::max(raw.p, r.size());
    auto all = raw.forbidden;
    all.insert(all.end(), rwords.begin(), rwords.end());
    raw.union_reduced = is_reduced(all);
    return raw;
}

ShiftSpec make_spec(std::vector<std::string> alphabet, const std::vector<std::string>& forbidden,
                    const std::vector<std::pair<std::string, std::uint64_t>>& repeated) {
    ShiftSpec s;
    std::vector<std::string> issues;
    try {
        s.alphabet = Alphabet(std::move(alphabet));
    } catch (const DomainError& e) {
        throw SpecError({e.what()});
    }
    auto parse = [&](const std::string& text) {
        try {
            return s.alphabet.parse(text);
        } catch (const DomainError& e) {
            issues.push_back("word '" + text + "': " + e.what());
            return Word{};
        }
    };
    for (const auto& a : forbidden) s.forbidden.push_back(parse(a));
    for (const auto& [w, m] : repeated) s.repeated.push_back({parse(w), m});
    if (!issues.empty()) throw SpecError(std::move(issues));
    return validate_spec(std::move(s));
}

bool is_allowed(const Word& w, const ShiftSpec& spec) {
    return std::none_of(spec.forbidden.begin(), spec.forbidden.end(),
                        [&](const Word& a) { return w.contains(a); });
}

mpz_class raw_multiplicity(const Word& w, const ShiftSpec& spec) {
    mpz_class m = 1;
    for (const auto& r : spec.repeated) {
        const auto n = subword_count(w, r.word);
        if (n == 0) continue;
        mpz_class f;
        mpz_ui_pow_ui(f.get_mpz_t(), r.multiplicity, n);
        m *= f;
    }
    return m;
}

mpz_class multiplicity(const Word& w, const ShiftSpec& spec) {
    if (!is_allowed(w, spec)) return 0;
    return raw_multiplicity(w, spec);
}

mpz_class forbidden_end_multiplicity(const Word& w, const Word& a, const ShiftSpec& spec) {
    if (!w.ends_with(a) || a.empty())
        throw DomainError("word does not end with the given forbidden word");
    if (std::find(spec.forbidden.begin(), spec.forbidden.end(), a) == spec.forbidden.end())
        throw DomainError("'" + spec.render(a) + "' is not a forbidden word");
    if (!is_allowed(w.drop_back(), spec))
        throw DomainError("'" + spec.render(w) + "' has a forbidden occurrence before its end");
    return raw_multiplicity(w, spec) / raw_multiplicity(a, spec);
}

mpz_class k_value(const Word& v, const ShiftSpec& spec) {
    if (v.size() < 2) throw DomainError("k(v) needs |v| >= 2");
    if (!is_allowed(v, spec)) throw DomainError("k(v) of forbidden word '" + spec.render(v) + "'");
    return raw_multiplicity(v, spec) / raw_multiplicity(v.drop_front(), spec);
}

namespace {

// Depth-first walk over allowed words. visit(w, m) fires for every allowed
// word with its multiplicity; hit(w, i, m) for each one-symbol extension that
// ends in forbidden word i, with m counting every repeated occurrence in w.
class Walker {
public:
    Walker(const ShiftSpec& spec, std::size_t n_max, std::uint64_t budget)
        : spec_(spec), n_max_(n_max), budget_(budget) {}

    template <class Visit, class Hit>
    void run(Visit&& visit, Hit&& hit) {
        Word w;
        descend(w, mpz_class(1), visit, hit);
    }

private:
    template <class Visit, class Hit>
    void descend(Word& w, const mpz_class& m, Visit& visit, Hit& hit) {
        if (w.size() >= n_max_) return;
        for (std::size_t s = 0; s < spec_.q(); ++s) {
            if (++nodes_ > budget_)
                throw BudgetError("enumeration exceeded budget of " + std::to_string(budget_) +
                                  " nodes");
            w.push_back(static_cast<Symbol>(s));
            std::size_t bad = spec_.forbidden.size();
            for (std::size_t i = 0; i < spec_.forbidden.size(); ++i)
                if (w.ends_with(spec_.forbidden[i])) {
                    bad = i;
                    break;
                }
            mpz_class next = m;
            for (const auto& r : spec_.repeated)
                if (w.ends_with(r.word)) next *= r.multiplicity;
            if (bad < spec_.forbidden.size()) {
                hit(w, bad, next);
            } else {
                visit(w, next);
                descend(w, next, visit, hit);
            }
            w.pop_back();
        }
    }

    const ShiftSpec& spec_;
    std::size_t n_max_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

LanguageSlice enumerate_slice(std::size_t n, const ShiftSpec& spec, std::uint64_t budget) {
    LanguageSlice slice;
    slice.n = n;
    if (n == 0) {
        slice.entries.push_back({Word{}, mpz_class(1)});
        slice.cardinality = 1;
        return slice;
    }
    Walker walker(spec, n, budget);
    walker.run(
        [&](const Word& w, const mpz_class& m) {
            if (w.size() == n) {
                slice.entries.push_back({w, m});
                slice.cardinality += m;
            }
        },
        [](const Word&, std::size_t, const mpz_class&) {});
    return slice;
}

OracleCounts oracle_counts(const ShiftSpec& spec, std::size_t n_max, std::uint64_t budget) {
    OracleCounts out;
    out.f.assign(n_max + 1, mpz_class(0));
    out.g.assign(spec.repeated.size(), std::vector<mpz_class>(n_max + 1, mpz_class(0)));
    out.fa.assign(spec.forbidden.size(), std::vector<mpz_class>(n_max + 1, mpz_class(0)));
    out.f[0] = 1;
    std::vector<mpz_class> a_mult;
    for (const auto& a : spec.forbidden) a_mult.push_back(raw_multiplicity(a, spec));

    Walker walker(spec, n_max, budget);
    walker.run(
        [&](const Word& w, const mpz_class& m) {
            out.f[w.size()] += m;
            for (std::size_t j = 0; j < spec.repeated.size(); ++j)
                if (w.ends_with(spec.repeated[j].word)) out.g[j][w.size()] += m;
        },
        [&](const Word& w, std::size_t i, const mpz_class& m) {
            out.fa[i][w.size()] += m / a_mult[i];
        });
    return out;
}

mpz_class f_oracle(std::size_t n, const ShiftSpec& spec, std::uint64_t budget) {
    return oracle_counts(spec, n, budget).f[n];
}

mpz_class g_oracle(std::size_t j, std::size_t n, const ShiftSpec& spec, std::uint64_t budget) {
    if (j >= spec.repeated.size()) throw DomainError("repeated word index out of range");
    return oracle_counts(spec, n, budget).g[j][n];
}

mpz_class f_a_oracle(std::size_t i, std::size_t n, const ShiftSpec& spec, std::uint64_t budget) {
    if (i >= spec.forbidden.size()) throw DomainError("forbidden word index out of range");
    return oracle_counts(spec, n, budget).fa[i][n];
}

ShiftSpec extend_R_tilde(const ShiftSpec& spec) {
    const auto p = spec.block_length();
    const bool needed = std::any_of(spec.repeated.begin(), spec.repeated.end(),
                                    [&](const RepeatedWord& r) { return r.word.size() < p; });
    if (!needed) return spec;
    ShiftSpec out;
    out.alphabet = spec.alphabet;
    out.forbidden = spec.forbidden;
    for (const auto& e : enumerate_slice(p, spec).entries) {
        const bool starts = std::any_of(spec.repeated.begin(), spec.repeated.end(),
                                        [&](const RepeatedWord& r) { return e.word.starts_with(r.word); });
        if (!starts) continue;
        out.repeated.push_back({e.word, k_value(e.word, spec).get_ui()});
    }
    return validate_spec(std::move(out));
}

}  // namespace sft
