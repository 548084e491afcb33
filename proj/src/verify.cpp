#include "sft/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sft/errors.hpp"
#include "sft/genfun.hpp"
#include "sft/measures.hpp"
#include "sft/spectral.hpp"

namespace sft {

bool VerifyResult::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.skipped || c.passed; });
}

const CheckResult* VerifyResult::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::size_t ExpectedCounts::longest() const {
    std::size_t n = f.size();
    for (const auto& [w, v] : g) n = std::max(n, v.size());
    for (const auto& [w, v] : fa) n = std::max(n, v.size());
    return n;
}

namespace {

class Suite {
public:
    explicit Suite(VerifyResult& out) : out_(out) {}

    template <class F>
    void run(const std::string& name, F&& body) {
        CheckResult c;
        c.name = name;
        try {
            body(c);
        } catch (const BudgetError&) {
            throw;
        } catch (const Error& e) {
            c.passed = false;
            c.detail = e.what();
        }
        out_.checks.push_back(std::move(c));
    }

    void skip(const std::string& name, const std::string& why) {
        out_.checks.push_back({name, true, true, why});
    }

private:
    VerifyResult& out_;
};

std::string first_mismatch(const std::vector<mpq_class>& series, const std::vector<mpz_class>& oracle) {
    for (std::size_t n = 0; n < oracle.size(); ++n)
        if (series[n] != mpq_class(oracle[n]))
            return "n=" + std::to_string(n) + ": series " + series[n].get_str() + ", oracle " +
                   oracle[n].get_str();
    return {};
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(3);
    s << x;
    return s.str();
}

}  // namespace

VerifyResult verify_spec(const ShiftSpec& spec, const VerifyOptions& opt) {
    VerifyResult out;
    Suite suite(out);
    const auto N = opt.max_n;
    const auto oracle = oracle_counts(spec, std::max(N + 1, opt.expected.longest()), opt.budget);

    if (!opt.expected.empty()) {
        suite.run("expected_counts", [&](CheckResult& c) {
            auto compare = [&](const std::string& what, const std::vector<mpz_class>& want,
                               const std::vector<mpz_class>& got) {
                for (std::size_t k = 0; k < want.size(); ++k)
                    if (want[k] != got[k + 1]) {
                        c.passed = false;
                        c.detail = what + "(" + std::to_string(k + 1) + "): expected " + want[k].get_str() +
                                   ", counted " + got[k + 1].get_str();
                        return false;
                    }
                return true;
            };
            auto lookup = [&](const auto& words, const std::string& key) -> std::size_t {
                for (std::size_t i = 0; i < words.size(); ++i)
                    if (spec.render(words[i]) == key) return i;
                throw DomainError("expected counts name unknown word '" + key + "'");
            };
            if (!compare("f", opt.expected.f, oracle.f)) return;
            for (const auto& [w, v] : opt.expected.g)
                if (!compare("g[" + w + "]", v, oracle.g[lookup(spec.repeated_words(), w)])) return;
            for (const auto& [w, v] : opt.expected.fa)
                if (!compare("fa[" + w + "]", v, oracle.fa[lookup(spec.forbidden, w)])) return;
            c.detail = "reference counts match for n <= " + std::to_string(opt.expected.longest());
        });
    }

    GenFunSolution sol;
    bool have_sol = false;
    suite.run("closed_forms", [&](CheckResult& c) {
        sol = solve_F(spec);
        have_sol = true;
        c.detail = sol.mode == SystemMode::reduced ? "direct solve, P and Q row-sum forms agree"
                                                   : "non-reduced system solved directly";
    });

    suite.run("series_vs_oracle", [&](CheckResult& c) {
        if (!have_sol) throw NumericError("no generating functions");
        std::string bad = first_mismatch(series_coeffs(sol.F, N), {oracle.f.begin(), oracle.f.begin() + N + 1});
        if (!bad.empty()) bad = "F " + bad;
        for (std::size_t j = 0; bad.empty() && j < sol.G.size(); ++j) {
            bad = first_mismatch(series_coeffs(sol.G[j], N), {oracle.g[j].begin(), oracle.g[j].begin() + N + 1});
            if (!bad.empty()) bad = "G[" + spec.render(spec.repeated[j].word) + "] " + bad;
        }
        for (std::size_t i = 0; bad.empty() && i < sol.Fa.size(); ++i) {
            bad = first_mismatch(series_coeffs(sol.Fa[i], N), {oracle.fa[i].begin(), oracle.fa[i].begin() + N + 1});
            if (!bad.empty()) bad = "Fa[" + spec.render(spec.forbidden[i]) + "] " + bad;
        }
        c.passed = bad.empty();
        c.detail = bad.empty() ? "F, G, Fa match brute force for n <= " + std::to_string(N) : bad;
    });

    suite.run("recurrence", [&](CheckResult& c) {
        // Coefficient form of the first equation of the system.
        std::vector<mpq_class> mu;
        for (const auto& a : spec.forbidden) {
            mpz_class w = 1;
            for (const auto& r : spec.repeated)
                for (std::size_t k = 0; k < gamma(a, r.word); ++k) w *= r.multiplicity;
            mu.emplace_back(w);
        }
        for (std::size_t n = 0; n < N; ++n) {
            mpq_class s = mpq_class(oracle.f[n + 1]) - mpq_class(oracle.f[n] * spec.q());
            for (std::size_t j = 0; j < spec.repeated.size(); ++j)
                s -= (1 - mpq_class(1, spec.repeated[j].multiplicity)) * mpq_class(oracle.g[j][n + 1]);
            for (std::size_t i = 0; i < spec.forbidden.size(); ++i) s += mu[i] * mpq_class(oracle.fa[i][n + 1]);
            if (s != 0) {
                c.passed = false;
                c.detail = "fails at n=" + std::to_string(n);
                return;
            }
        }
        c.detail = "holds for n < " + std::to_string(N);
    });

    const auto A = build_adjacency(spec);
    suite.run("block_power_sums", [&](CheckResult& c) {
        const auto p = spec.block_length();
        const bool full = std::all_of(spec.repeated.begin(), spec.repeated.end(),
                                      [&](const RepeatedWord& r) { return r.word.size() == p; });
        if (!full) {
            c.skipped = true;
            c.detail = "a repeated word is shorter than the block length";
            return;
        }
        const auto n = A.size();
        std::vector<mpz_class> row(n, mpz_class(1));  // 1^T A^k
        std::size_t k = 0;
        for (std::size_t m = p; m <= std::min(p + 6, N); ++m) {
            while (k < m - p + 1) {
                std::vector<mpz_class> next(n, mpz_class(0));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        if (A.at(i, j)) next[j] += row[i] * static_cast<unsigned long>(A.at(i, j));
                row = std::move(next);
                ++k;
            }
            mpz_class total = 0;
            for (const auto& v : row) total += v;
            if (total != oracle.f[m]) {
                c.passed = false;
                c.detail = "n=" + std::to_string(m) + ": entry sum " + total.get_str() + ", f(n) " +
                           oracle.f[m].get_str();
                return;
            }
        }
        c.detail = "entry sums of A^(n-p+1) equal f(n)";
    });

    suite.run("equal_row_entries", [&](CheckResult& c) {
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (multiplicity(A.labels[i], spec) <= 1) continue;
            std::uint64_t seen = 0;
            for (std::size_t j = 0; j < A.size(); ++j) {
                const auto a = A.at(i, j);
                if (a == 0) continue;
                if (seen && a != seen) {
                    c.passed = false;
                    c.detail = "row " + spec.render(A.labels[i]) + " has unequal entries";
                    return;
                }
                seen = a;
            }
        }
    });

    if (!is_irreducible(A)) {
        for (const char* name : {"perron_routes", "eigen_residuals", "normalization", "stochastic",
                                 "kolmogorov", "pushforward", "combinatorial_measure"})
            suite.skip(name, "adjacency matrix is not irreducible");
        return out;
    }

    ParryData d;
    bool have_d = false;
    suite.run("perron_routes", [&](CheckResult& c) {
        d = parry_data(spec);
        have_d = true;
        c.detail = "theta " + std::to_string(d.root.theta) + ", routes differ by " +
                   fmt(d.root.route_agreement);
    });
    if (!have_d) {
        for (const char* name : {"eigen_residuals", "normalization", "stochastic", "kolmogorov",
                                 "pushforward", "combinatorial_measure"})
            suite.skip(name, "no Perron data");
        return out;
    }

    suite.run("eigen_residuals", [&](CheckResult& c) {
        const auto rr = right_residual(d.A, d.root.theta, d.vectors.V);
        const auto rl = left_residual(d.A, d.root.theta, d.vectors.U);
        c.passed = rr <= 1e-9 && rl <= 1e-9;
        c.detail = "right " + fmt(rr) + ", left " + fmt(rl);
    });

    suite.run("normalization", [&](CheckResult& c) {
        c.detail = "U.V " + std::to_string(d.norm.dot) + ", formula " + std::to_string(d.norm.formula) +
                   (d.norm.property_p ? ", property (P) witnessed" : ", property (P) unknown");
        const bool full = std::all_of(spec.repeated.begin(), spec.repeated.end(), [&](const RepeatedWord& r) {
            return r.word.size() == spec.block_length();
        });
        if (d.norm.property_p && spec.union_reduced && full) {
            c.passed = d.norm.agree;
        } else {
            c.skipped = true;
            c.detail += d.norm.agree ? " (agree)" : " (differ)";
        }
    });

    suite.run("stochastic", [&](CheckResult& c) {
        const auto rd = d.P.row_defect();
        const auto sd = d.P.stationarity_defect();
        c.passed = rd <= 1e-12 && sd <= 1e-12;
        c.detail = "row defect " + fmt(rd) + ", stationarity defect " + fmt(sd);
    });

    suite.run("kolmogorov", [&](CheckResult& c) {
        const auto rep = kolmogorov_check(d, opt.cylinder_edges);
        c.passed = rep.ok();
        c.detail = std::to_string(rep.checked) + " cylinders" + (rep.exact ? " (exact)" : "");
        if (!rep.ok()) c.detail += "; " + rep.violations.front();
    });

    suite.run("pushforward", [&](CheckResult& c) {
        const auto rep = pushforward_check(d, opt.vertex_words);
        c.passed = rep.ok();
        c.detail = std::to_string(rep.checked) + " vertex words" + (rep.exact ? " (exact)" : "");
        if (!rep.ok()) c.detail += "; " + rep.violations.front();
    });

    suite.run("combinatorial_measure", [&](CheckResult& c) {
        if (!d.norm.property_p || !d.norm.agree) {
            c.skipped = true;
            c.detail = "normalization identity not established for this spec";
            return;
        }
        double worst = 0;
        std::size_t count = 0;
        const auto n = d.A.size();
        std::vector<std::size_t> path;
        auto rec = [&](auto&& self) -> void {
            if (!path.empty()) {
                Cylinder cyl{path, std::vector<std::uint64_t>(path.size() - 1, 1)};
                const auto a = cylinder_measure(d, cyl, MeasureRoute::parry);
                const auto b = cylinder_measure(d, cyl, MeasureRoute::combinatorial);
                worst = std::max(worst, std::fabs(a.value - b.value));
                ++count;
            }
            if (path.size() == opt.cylinder_edges) return;
            for (std::size_t v = 0; v < n; ++v) {
                if (!path.empty() && d.A.at(path.back(), v) == 0) continue;
                path.push_back(v);
                self(self);
                path.pop_back();
            }
        };
        rec(rec);
        c.passed = worst <= 1e-9;
        c.detail = std::to_string(count) + " cylinders, max difference " + fmt(worst);
    });
    return out;
}

}  // namespace sft
