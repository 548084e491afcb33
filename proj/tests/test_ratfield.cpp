#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "sft/errors.hpp"
#include "sft/ratfield.hpp"

using namespace sft;

namespace {

Poly P(std::vector<long> c) {
    std::vector<mpq_class> q;
    for (long x : c) q.emplace_back(x);
    return Poly(q);
}

const Poly z = Poly::z();

Poly random_poly(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<long> coef(-3, 3);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::vector<mpq_class> c;
    for (int k = deg(rng); k >= 0; --k) c.emplace_back(coef(rng));
    return Poly(c);
}

}  // namespace

TEST_CASE("polynomial basics") {
    CHECK((z * z + z + 1).derivative() == P({1, 2}));
    CHECK(Poly::gcd(z * z - 1, z - 1) == z - 1);
    CHECK(Poly::gcd(P({2, 2}), P({4, -4})) == Poly(1));
    CHECK((z * z * z + z + 2).eval(mpq_class(2)) == 12);
    CHECK((z * z * z + z + 2).eval(2.0L) == doctest::Approx(12.0));
    CHECK(Poly().degree() == -1);
    CHECK(P({0, 0, 0}).is_zero());
    const auto [q, r] = Poly::divmod(z * z * z - 1, z - 1);
    CHECK(q == z * z + z + 1);
    CHECK(r.is_zero());
    CHECK_THROWS_AS(Poly::divmod(z, Poly()), DomainError);
    CHECK(((z * z - 1) / (z + 1)) == z - 1);
    CHECK_THROWS(z / (z + 1));
    CHECK(P({1, -2, 3}).to_string() == "3*z^2 - 2*z + 1");
}

TEST_CASE("rational functions are canonical") {
    const RatFun a(z * z - 1, z - 1);
    CHECK(a == RatFun(z + 1));
    const RatFun b(P({2}), P({4, 2}));
    CHECK(b.den() == z + 2);
    CHECK(b.num() == Poly(1));
    const auto c = RatFun(1) / RatFun(z) + RatFun(1) / RatFun(z * z);
    CHECK(c == RatFun(z + 1, z * z));
    CHECK((c - c).is_zero());
    CHECK(RatFun(z, z - 2).inverse() == RatFun(z - 2, z));
    CHECK(RatFun(1, z).derivative() == RatFun(-1, z * z));
    CHECK_THROWS_AS(RatFun(1, z - 1).eval(mpq_class(1)), NumericError);
    CHECK(RatFun(z, z - 2).eval(mpq_class(4)) == 2);
}

TEST_CASE("matrix inverse") {
    RatMat id = RatMat::identity(3);
    CHECK(id.inverse() == id);

    RatMat d(2, 2);
    d(0, 0) = RatFun(z);
    d(1, 1) = RatFun(z * z + 1);
    const auto di = d.inverse();
    CHECK(di(0, 0) == RatFun(1, z));
    CHECK(di(1, 1) == RatFun(Poly(1), z * z + 1));
    CHECK(di(0, 1).is_zero());

    RatMat s(2, 2);
    s(0, 0) = RatFun(z);
    s(0, 1) = RatFun(z);
    s(1, 0) = RatFun(1);
    s(1, 1) = RatFun(1);
    CHECK_THROWS_AS(s.inverse(), NumericError);

    RatMat one(1, 1);
    one(0, 0) = RatFun(1);
    CHECK(one.inverse().row_sums() == std::vector<RatFun>{RatFun(1)});

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 4;
        RatMat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = RatFun(random_poly(rng, 3));
        try {
            const auto inv = m.inverse();
            CHECK(m * inv == RatMat::identity(n));
            CHECK(inv * m == RatMat::identity(n));
        } catch (const NumericError&) {
            // singular draw
        }
    }
}

TEST_CASE("solve matches inverse times rhs") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 3;
        RatMat m(n, n), b(n, 1);
        for (std::size_t i = 0; i < n; ++i) {
            b(i, 0) = RatFun(random_poly(rng, 2));
            for (std::size_t j = 0; j < n; ++j) m(i, j) = RatFun(random_poly(rng, 2), random_poly(rng, 1) + z * z);
        }
        try {
            const auto x = m.solve(b);
            CHECK(m * x == b);
        } catch (const NumericError&) {
        }
    }
}

TEST_CASE("series coefficients") {
    auto s = series_coeffs(RatFun(z, z - 2), 6);
    for (std::size_t n = 0; n <= 6; ++n) CHECK(s[n] == mpq_class(1L << n));
    s = series_coeffs(RatFun(z, z - 3), 5);
    CHECK(s[5] == 243);
    CHECK(series_coeffs(RatFun(1, z), 3) == std::vector<mpq_class>{0, 1, 0, 0});
    CHECK_THROWS_AS(series_coeffs(RatFun(z * z, z - 1), 3), DomainError);

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        auto den = random_poly(rng, 3) + z * z * z * z;
        const RatFun f(random_poly(rng, 4), den);
        const RatFun g(random_poly(rng, 2), random_poly(rng, 1) + z * z);
        const auto sf = series_coeffs(f, 8);
        const auto sg = series_coeffs(g, 8);
        const auto sh = series_coeffs(f + g, 8);
        for (std::size_t n = 0; n <= 8; ++n) CHECK(sh[n] == sf[n] + sg[n]);
    }
}

TEST_CASE("largest real root") {
    const auto c = largest_real_root(z - 2, 1, 10);
    CHECK(c.value == 2.0);
    REQUIRE(c.exact_integer);
    CHECK(*c.exact_integer == 2);

    // z - 4 - 5/z has largest zero 5.
    const auto r = largest_real_zero(RatFun(z * z - 4 * z - 5, z), 1, 20);
    CHECK(r.value == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(r.is_integer());

    // (z^2 - 7)(z + 3) on [0, 10]: sqrt 7.
    const auto s = largest_real_root((z * z - 7) * (z + 3), 0, 10);
    CHECK(std::fabs(s.value - std::sqrt(7.0)) < 1e-12);
    CHECK(s.hi - s.lo <= mpq_class(1, 1000000000000L));
    CHECK(s.lo * s.lo <= 7);
    CHECK(s.hi * s.hi >= 7);
    CHECK_FALSE(s.is_integer());

    // A repeated root is still found through the square-free part.
    const auto d = largest_real_root((z - 3) * (z - 3) * (z - 1), 0, 10);
    CHECK(d.value == 3.0);

    CHECK_THROWS_AS(largest_real_root(z * z + 1, -5, 5), NumericError);
}

TEST_CASE("sturm counts match root counts") {
    const auto p = (z - 1) * (z - 2) * (z + 4) * (z * z + 1);
    const auto seq = sturm_sequence(p);
    CHECK(sturm_count(seq, -10, 10) == 3);
    CHECK(sturm_count(seq, 0, 10) == 2);
    CHECK(sturm_count(seq, 1, 2) == 1);  // (1, 2]
}

TEST_CASE("exact strings") {
    CHECK(to_exact_string(mpq_class(6, 4)) == "3/2");
    CHECK(to_exact_string(mpq_class(-2)) == "-2");
    CHECK(P({1, 0, 3}).to_strings() == std::vector<std::string>{"1", "0", "3"});
}
