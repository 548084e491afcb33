#include "sft/genfun.hpp"

#include "sft/errors.hpp"

namespace sft {

RatFun to_ratfun(const CorrelationPoly& p) {
    std::vector<mpq_class> c;
    c.reserve(p.coefficients.size());
    for (auto v : p.coefficients) c.emplace_back(static_cast<long>(v));
    return RatFun(Poly(std::move(c)));
}

namespace {

const RatFun kZ = RatFun::z();

RatFun z_pow(std::size_t k) { return RatFun(Poly::monomial(1, k)); }

mpq_class weight(const RepeatedWord& r) {
    return 1 - mpq_class(1, r.multiplicity);
}

std::vector<std::string> word_labels(const ShiftSpec& spec) {
    std::vector<std::string> out;
    for (const auto& r : spec.repeated) out.push_back(spec.render(r.word));
    for (const auto& a : spec.forbidden) out.push_back(spec.render(a));
    return out;
}

// Product of m_j^{gamma_t(a, r_j)}; t = 0 gives the plain gamma count.
mpq_class inner_weight(const Word& a, const ShiftSpec& spec, std::size_t t) {
    mpz_class out = 1;
    for (const auto& r : spec.repeated) {
        const auto g = gamma_t(a, r.word, t);
        for (std::size_t k = 0; k < g; ++k) out *= r.multiplicity;
    }
    return mpq_class(out);
}

RatFun tail_poly(const Word& u, const Word& v, std::size_t alpha) {
    if (alpha == 0) return RatFun();
    return to_ratfun(tail_correlation_poly(u, v, std::min(alpha, u.size())));
}

}  // namespace

RatMat build_P(const ShiftSpec& spec, bool allow_non_reduced) {
    if (!spec.union_reduced && !allow_non_reduced)
        throw DomainError("P(z) needs F and R to form a reduced collection");
    const auto l = spec.repeated.size();
    const auto s = spec.forbidden.size();
    std::vector<Word> w = spec.repeated_words();
    w.insert(w.end(), spec.forbidden.begin(), spec.forbidden.end());
    RatMat P(l + s, l + s);
    for (std::size_t i = 0; i < l + s; ++i)
        for (std::size_t j = 0; j < l + s; ++j) {
            RatFun c = to_ratfun(correlation_poly(w[j], w[i]));
            if (j < l) {
                RatFun e = kZ * RatFun(weight(spec.repeated[j])) * c;
                if (i == j) e -= z_pow(w[j].size());
                P(i, j) = e;
            } else {
                P(i, j) = -kZ * c;
            }
        }
    P.row_labels = P.col_labels = word_labels(spec);
    return P;
}

RatMat build_D(const ShiftSpec& spec) {
    const auto l = spec.repeated.size();
    const auto n = l + spec.forbidden.size();
    RatMat D(n, n);
    for (std::size_t i = 0; i < n; ++i)
        D(i, i) = i < l ? kZ * RatFun(weight(spec.repeated[i])) : -kZ;
    D.row_labels = D.col_labels = word_labels(spec);
    return D;
}

RatMat build_Q(const ShiftSpec& spec, bool allow_non_reduced) {
    const auto P = build_P(spec, allow_non_reduced);
    const auto D = build_D(spec);
    RatMat Dinv = D;
    for (std::size_t i = 0; i < D.rows(); ++i) Dinv(i, i) = D(i, i).inverse();
    RatMat Q = Dinv * P.transpose() * D;
    Q.row_labels = Q.col_labels = word_labels(spec);
    return Q;
}

GenFunSystem build_system(const ShiftSpec& spec) {
    const auto l = spec.repeated.size();
    const auto s = spec.forbidden.size();
    const auto n = 1 + l + s;
    GenFunSystem sys;
    sys.mode = spec.union_reduced ? SystemMode::reduced : SystemMode::non_reduced;
    sys.matrix = RatMat(n, n);
    auto& M = sys.matrix;

    std::vector<mpq_class> mu;
    for (const auto& a : spec.forbidden) mu.push_back(inner_weight(a, spec, 0));

    M(0, 0) = kZ - RatFun(static_cast<long>(spec.q()));
    for (std::size_t j = 0; j < l; ++j) M(0, 1 + j) = -kZ * RatFun(weight(spec.repeated[j]));
    for (std::size_t i = 0; i < s; ++i) M(0, 1 + l + i) = kZ * RatFun(mu[i]);

    for (std::size_t k = 0; k < l; ++k) {
        const auto& rk = spec.repeated[k].word;
        M(1 + k, 0) = RatFun(1);
        for (std::size_t j = 0; j < l; ++j) {
            const auto& rj = spec.repeated[j];
            RatFun e = kZ * RatFun(weight(rj)) * to_ratfun(correlation_poly(rj.word, rk));
            if (j == k) e -= z_pow(rj.word.size());
            M(1 + k, 1 + j) = e;
        }
        for (std::size_t i = 0; i < s; ++i)
            M(1 + k, 1 + l + i) =
                -kZ * RatFun(mu[i]) * tail_poly(spec.forbidden[i], rk, rk.size());
    }

    for (std::size_t k = 0; k < s; ++k) {
        const auto& ak = spec.forbidden[k];
        M(1 + l + k, 0) = RatFun(1);
        for (std::size_t j = 0; j < l; ++j) {
            const auto& rj = spec.repeated[j];
            M(1 + l + k, 1 + j) =
                kZ * RatFun(weight(rj)) * tail_poly(rj.word, ak, rj.word.size() - 1);
        }
        for (std::size_t i = 0; i < s; ++i) {
            const auto& ai = spec.forbidden[i];
            RatFun e;
            for (auto t : correlate(ai, ak).positions())
                e -= z_pow(t) * RatFun(inner_weight(ai, spec, t));
            M(1 + l + k, 1 + l + i) = e;
        }
    }

    sys.unknowns.push_back("F");
    for (const auto& r : spec.repeated) sys.unknowns.push_back("G[" + spec.render(r.word) + "]");
    for (const auto& a : spec.forbidden) sys.unknowns.push_back("Fa[" + spec.render(a) + "]");
    M.row_labels = M.col_labels = sys.unknowns;
    sys.rhs = RatMat(n, 1);
    sys.rhs(0, 0) = kZ;
    return sys;
}

RatMat build_L(const ShiftSpec& spec) {
    if (!spec.union_reduced) throw DomainError("L(z) needs F and R to form a reduced collection");
    return build_system(spec).matrix;
}

RatFun combine_row_sums(const ShiftSpec& spec, const std::vector<RatFun>& sums) {
    const auto l = spec.repeated.size();
    RatFun acc;
    for (std::size_t i = 0; i < sums.size(); ++i) {
        if (i < l)
            acc += RatFun(weight(spec.repeated[i])) * sums[i];
        else
            acc -= sums[i];
    }
    return kZ * acc;
}

GenFunSolution solve_F(const ShiftSpec& spec) {
    const auto sys = build_system(spec);
    const auto x = sys.matrix.solve(sys.rhs);
    GenFunSolution sol;
    sol.mode = sys.mode;
    sol.F = x(0, 0);
    const auto l = spec.repeated.size();
    for (std::size_t j = 0; j < l; ++j) sol.G.push_back(x(1 + j, 0));
    for (std::size_t i = 0; i < spec.forbidden.size(); ++i) sol.Fa.push_back(x(1 + l + i, 0));

    if (sys.mode == SystemMode::reduced) {
        const RatFun base = kZ - RatFun(static_cast<long>(spec.q()));
        if (l + spec.forbidden.size() == 0) {
            sol.F_via_R = sol.F_via_S = kZ / base;
        } else {
            sol.R_sums = build_P(spec).inverse().row_sums();
            sol.S_sums = build_Q(spec).inverse().row_sums();
            sol.F_via_R = kZ / (base + combine_row_sums(spec, sol.R_sums));
            sol.F_via_S = kZ / (base + combine_row_sums(spec, sol.S_sums));
        }
        if (!(*sol.F_via_R == sol.F) || !(*sol.F_via_S == sol.F))
            throw NumericError("closed forms for F(z) disagree with the solved system");
    }
    return sol;
}

RatFun R_of_z(const ShiftSpec& spec, const GenFunSolution& sol) {
    if (sol.mode == SystemMode::reduced && !sol.R_sums.empty())
        return combine_row_sums(spec, sol.R_sums);
    return kZ / sol.F - kZ + RatFun(static_cast<long>(spec.q()));
}

RatFun R_of_z(const ShiftSpec& spec) { return R_of_z(spec, solve_F(spec)); }

}  // namespace sft
