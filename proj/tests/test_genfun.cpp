#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "sft/errors.hpp"
#include "sft/genfun.hpp"
#include "support.hpp"

using namespace sft;

namespace {

const Poly z = Poly::z();

RatFun q(long num, long den) { return RatFun(mpq_class(num, den)); }

ShiftSpec bin(const std::vector<std::string>& f, const std::vector<std::pair<std::string, std::uint64_t>>& r) {
    return make_spec({"0", "1"}, f, r);
}

void check_series(const ShiftSpec& spec, std::size_t N) {
    const auto sol = solve_F(spec);
    const auto naive = testing_support::naive_counts(testing_support::to_naive(spec), N);
    const auto sf = series_coeffs(sol.F, N);
    for (std::size_t n = 0; n <= N; ++n) {
        REQUIRE(sf[n] == mpq_class(naive.f[n]));
        for (std::size_t j = 0; j < sol.G.size(); ++j) CHECK(series_coeffs(sol.G[j], N)[n] == mpq_class(naive.g[j][n]));
        for (std::size_t i = 0; i < sol.Fa.size(); ++i)
            CHECK(series_coeffs(sol.Fa[i], N)[n] == mpq_class(naive.fa[i][n]));
    }
    CHECK(sol.F == RatFun(z) / (RatFun(z) - RatFun(static_cast<long>(spec.q())) + R_of_z(spec, sol)));
}

}  // namespace

TEST_CASE("worked eigenvector example: P, Q and row sums") {
    const auto s = bin({"010"}, {{"100", 3}});
    const auto P = build_P(s);
    CHECK(P(0, 0) == RatFun(-z * z * z) * q(1, 3));
    CHECK(P(0, 1) == RatFun(-z * z));
    CHECK(P(1, 0) == RatFun(z) * q(2, 3));
    CHECK(P(1, 1) == RatFun(-z * (z * z + 1)));

    const auto Q = build_Q(s);
    CHECK(Q(0, 0) == RatFun(-z * z * z) * q(1, 3));
    CHECK(Q(0, 1) == RatFun(-z));
    CHECK(Q(1, 0) == RatFun(z * z) * q(2, 3));
    CHECK(Q(1, 1) == RatFun(-z * (z * z + 1)));

    const auto cubic = z * z * z + z + 2;
    const auto sol = solve_F(s);
    REQUIRE(sol.R_sums.size() == 2);
    CHECK(sol.R_sums[0] == RatFun(-3 * (z * z - z + 1), z * z * cubic));
    CHECK(sol.R_sums[1] == RatFun(-(z * z + 2), z * z * cubic));
    CHECK(sol.S_sums[0] == RatFun(Poly(-3), cubic));
    CHECK(sol.S_sums[1] == RatFun(-(z + 2), z * z * z * z + z * z + 2 * z));
    CHECK(R_of_z(s) == RatFun(2 - z, cubic));
    REQUIRE(sol.F_via_R);
    CHECK(*sol.F_via_R == sol.F);
    CHECK(*sol.F_via_S == sol.F);

    const auto D = build_D(s);
    CHECK(D(0, 0) == RatFun(z) * q(2, 3));
    CHECK(D(1, 1) == RatFun(-z));
}

TEST_CASE("counting table series") {
    const auto s = bin({"010"}, {{"000", 2}});
    const auto sol = solve_F(s);
    const std::vector<long> f{1, 2, 4, 8, 17, 37, 81, 178, 392, 864, 1905};
    const auto sf = series_coeffs(sol.F, 10);
    for (std::size_t n = 0; n <= 10; ++n) CHECK(sf[n] == f[n]);
    const auto sys = build_system(s);
    CHECK(sys.mode == SystemMode::reduced);
    CHECK(sys.unknowns == std::vector<std::string>{"F", "G[000]", "Fa[010]"});
    CHECK(sys.matrix == build_L(s));
    check_series(s, 12);
}

TEST_CASE("conjecture spec R(z)") {
    const auto s = bin({"00"}, {{"01", 2}, {"10", 3}, {"11", 2}});
    CHECK(R_of_z(s) == RatFun(-3 * (z + 2), z * z - 3));
}

TEST_CASE("non-reduced system") {
    const auto s = bin({"001"}, {{"00", 2}});
    const auto sys = build_system(s);
    CHECK(sys.mode == SystemMode::non_reduced);
    const auto& M = sys.matrix;
    CHECK(M(0, 0) == RatFun(z - 2));
    CHECK(M(0, 1) == RatFun(z) * q(-1, 2));
    CHECK(M(0, 2) == RatFun(2 * z));
    CHECK(M(1, 0) == RatFun(1));
    CHECK(M(1, 1) == RatFun(z - z * z) * q(1, 2));
    CHECK(M(1, 2) == RatFun(0));
    CHECK(M(2, 0) == RatFun(1));
    CHECK(M(2, 1) == RatFun(z) * q(1, 2));
    CHECK(M(2, 2) == RatFun(-z * z * z));
    CHECK(sys.rhs(0, 0) == RatFun(z));

    const auto sol = solve_F(s);
    CHECK_FALSE(sol.F_via_R.has_value());
    CHECK(sol.F == RatFun(z * z * z - z * z, z * z * z - 3 * z * z + z + 2));
    check_series(s, 12);
    CHECK_THROWS_AS(build_P(s), DomainError);
}

TEST_CASE("forbidden words only") {
    const auto s = bin({"11"}, {});
    const auto sol = solve_F(s);
    const auto sf = series_coeffs(sol.F, 8);
    const std::vector<long> fib{1, 2, 3, 5, 8, 13, 21, 34, 55};
    for (std::size_t n = 0; n <= 8; ++n) CHECK(sf[n] == fib[n]);
    CHECK(R_of_z(s) == RatFun(Poly(1), z + 1));
}

TEST_CASE("full shift") {
    const auto s = bin({}, {});
    CHECK(solve_F(s).F == RatFun(z, z - 2));
    CHECK(R_of_z(s).is_zero());
    const auto t = make_spec({"a", "b", "c"}, {}, {});
    CHECK(solve_F(t).F == RatFun(z, z - 3));
}

TEST_CASE("repeated words only") {
    const auto s = bin({}, {{"01", 3}});
    check_series(s, 10);
    const auto t = make_spec({"0", "1", "2"}, {}, {{"0", 2}});
    check_series(t, 7);
}

TEST_CASE("random specs: series against brute force") {
    std::mt19937_64 rng(2024);
    testing_support::RandomSpecOptions opt;
    opt.require_irreducible = false;
    int non_reduced = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto spec = testing_support::random_spec(rng, opt);
        if (!spec.union_reduced) ++non_reduced;
        check_series(spec, spec.q() == 2 ? 10 : 7);
    }
    CHECK(non_reduced > 0);
}
