#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>

#include "sft/errors.hpp"
#include "sft/measures.hpp"
#include "support.hpp"

using namespace sft;

namespace {

ShiftSpec bin(const std::vector<std::string>& f, const std::vector<std::pair<std::string, std::uint64_t>>& r) {
    return make_spec({"0", "1"}, f, r);
}

AdjMatrix rows(std::vector<std::vector<std::uint64_t>> r) { return AdjMatrix::from_rows(r); }

std::vector<std::vector<mpq_class>> random_stochastic(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> w(0, 5);
    std::vector<std::vector<mpq_class>> P(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> raw(n);
        int total = 0;
        for (std::size_t j = 0; j < n; ++j) total += raw[j] = w(rng);
        raw[(i + 1) % n] += 1;  // keeps the cycle 0 -> 1 -> ... -> 0, so P is irreducible
        ++total;
        for (std::size_t j = 0; j < n; ++j) {
            P[i][j] = mpq_class(raw[j], total);
            P[i][j].canonicalize();
        }
    }
    return P;
}

struct EdgeStep {
    std::size_t from, to;
    std::uint64_t branch;
    bool operator==(const EdgeStep&) const = default;
};

// Every edge path with n edges, compared against W as a contiguous block.
mpz_class brute_avoiding(const AdjMatrix& A, const Cylinder& W, std::size_t n) {
    std::vector<EdgeStep> hole;
    for (std::size_t k = 0; k < W.edges(); ++k) hole.push_back({W.vertices[k], W.vertices[k + 1], W.branches[k]});
    mpz_class count = 0;
    std::vector<EdgeStep> path;
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (path.size() >= hole.size() &&
            std::equal(hole.begin(), hole.end(), path.end() - static_cast<long>(hole.size())))
            return;
        if (path.size() == n) {
            ++count;
            return;
        }
        for (std::size_t u = 0; u < A.size(); ++u)
            for (std::uint64_t b = 1; b <= A.at(v, u); ++b) {
                path.push_back({v, u, b});
                rec(u);
                path.pop_back();
            }
    };
    for (std::size_t v = 0; v < A.size(); ++v) rec(v);
    return count;
}

}  // namespace

TEST_CASE("Shannon-Parry matrix of a two-state example") {
    const auto P = shannon_parry_matrix(rows({{2, 1}, {1, 0}}));
    const double r2 = std::sqrt(2.0);
    CHECK(std::fabs(P.at(0, 0) - 2 * (r2 - 1)) < 1e-12);
    CHECK(std::fabs(P.at(0, 1) - (3 - 2 * r2)) < 1e-12);
    CHECK(P.at(1, 0) == doctest::Approx(1.0));
    CHECK(P.at(1, 1) == 0.0);
    CHECK(P.row_defect() < 1e-12);
    CHECK(P.stationarity_defect() < 1e-12);

    const auto one = shannon_parry_matrix(rows({{5}}));
    CHECK(one.at(0, 0) == 1.0);
    REQUIRE(one.exact);
    CHECK((*one.exact)[0] == 1);
}

TEST_CASE("uniform multiples share the Parry matrix") {
    const auto hat = shannon_parry_matrix(rows({{1, 1}, {1, 0}}));
    const auto big = shannon_parry_matrix(rows({{3, 3}, {3, 0}}));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(std::fabs(hat.at(i, j) - big.at(i, j)) < 1e-12);
}

TEST_CASE("lifting rational stochastic matrices") {
    using Q = mpq_class;
    auto A = lift_rational_stochastic({{Q(1, 2), Q(1, 2)}, {Q(1), Q(0)}});
    CHECK(A.entries == std::vector<std::uint64_t>{1, 1, 2, 0});
    A = lift_rational_stochastic({{Q(2, 3), Q(1, 3)}, {Q(1), Q(0)}});
    CHECK(A.entries == std::vector<std::uint64_t>{2, 1, 3, 0});
    A = lift_rational_stochastic({{Q(0), Q(1)}, {Q(1), Q(0)}});
    CHECK(A.entries == std::vector<std::uint64_t>{0, 1, 1, 0});
    CHECK_THROWS_AS(lift_rational_stochastic({{Q(1, 2), Q(1, 3)}, {Q(1), Q(0)}}), DomainError);
    CHECK_THROWS_AS(lift_rational_stochastic({{Q(3, 2), Q(-1, 2)}, {Q(1), Q(0)}}), DomainError);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const auto P = random_stochastic(rng, 2 + trial % 3);
        const auto S = shannon_parry_matrix(lift_rational_stochastic(P));
        REQUIRE(S.exact);
        for (std::size_t i = 0; i < P.size(); ++i)
            for (std::size_t j = 0; j < P.size(); ++j) CHECK((*S.exact)[i * P.size() + j] == P[i][j]);
    }
}

TEST_CASE("cylinder routes on the worked example") {
    const auto d = parry_data(bin({"010"}, {{"100", 3}}));
    const auto c = parse_cylinder(bin({"010"}, {{"100", 3}}), d.A, "00*00#1");
    for (auto route : {MeasureRoute::parry, MeasureRoute::combinatorial, MeasureRoute::markov}) {
        const auto m = cylinder_measure(d, c, route);
        REQUIRE(m.exact);
        CHECK(*m.exact == mpq_class(3, 22));
    }
    CHECK(d.P.stationary_exact.has_value());
    CHECK(pushforward_check(d, 5).ok());
    CHECK(kolmogorov_check(d, 5).ok());
    CHECK(kolmogorov_check(d, 4, MeasureRoute::combinatorial).ok());
}

TEST_CASE("full shift cylinders are uniform") {
    // A cylinder through four symbols has measure 2^-4.
    const auto s = bin({}, {});
    const auto d = parry_data(s);
    CHECK(cylinder_measure(d, parse_cylinder(s, d.A, "0*1#1,1*1#1,1*0#1"), MeasureRoute::parry).exact ==
          mpq_class(1, 16));
    CHECK(cylinder_measure(d, parse_cylinder(s, d.A, "0110"), MeasureRoute::markov).value ==
          doctest::Approx(1.0 / 16));
}

TEST_CASE("branch symmetry and projection") {
    const auto s = bin({"00"}, {{"01", 2}, {"10", 3}, {"11", 2}});
    const auto d = parry_data(s);
    const auto a = cylinder_measure(d, parse_cylinder(s, d.A, "0*1#1,1*0#3"), MeasureRoute::parry);
    const auto b = cylinder_measure(d, parse_cylinder(s, d.A, "0*1#2,1*0#1"), MeasureRoute::parry);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-14));
    const auto c = parse_cylinder(s, d.A, "0*1#2,1*0#1");
    CHECK(project_pi(c).vertices == c.vertices);
    CHECK(project_pi(c).branches.empty());
    CHECK(preimage_count(d.A, c.vertices) == 6);
    // All branches from X to Y together carry rho_X P_XY.
    const auto single = cylinder_measure(d, parse_cylinder(s, d.A, "1*0#1"), MeasureRoute::parry);
    CHECK(3 * single.value == doctest::Approx(d.P.stationary[1] * d.P.at(1, 0)).epsilon(1e-12));
    CHECK(pushforward_check(d, 5).ok());
    CHECK(kolmogorov_check(d, 5).ok());
}

TEST_CASE("cylinder parsing errors") {
    const auto s = bin({"00"}, {{"01", 2}});
    const auto A = build_adjacency(s);
    CHECK_THROWS_AS(parse_cylinder(s, A, "0*0#1"), DomainError);
    CHECK_THROWS_AS(parse_cylinder(s, A, "0*1#3"), DomainError);
    CHECK_THROWS_AS(parse_cylinder(s, A, "0*1#1,0*1#1"), DomainError);
    CHECK_THROWS_AS(parse_cylinder(s, A, "001"), DomainError);
    CHECK_THROWS_AS(parse_cylinder(s, A, ""), DomainError);
    CHECK(parse_cylinder(s, A, "0*1").branches == std::vector<std::uint64_t>{1});
    CHECK(render_cylinder(s, A, parse_cylinder(s, A, "0*1#2, 1*1")) == "0*1#2,1*1#1");
    CHECK(parse_route("shannon_parry") == MeasureRoute::markov);
    CHECK_THROWS_AS(parse_route("bogus"), DomainError);
}

TEST_CASE("equal multiplicities push forward to the Parry measure") {
    const auto s = bin({"11"}, {{"00", 3}, {"01", 3}, {"10", 3}});
    const auto d = parry_data(s);
    CHECK(d.A.entries == std::vector<std::uint64_t>{3, 3, 3, 0});
    const auto hat = shannon_parry_matrix(rows({{1, 1}, {1, 0}}));
    std::size_t checked = 0;
    std::vector<std::size_t> path;
    std::function<void()> rec = [&]() {
        if (!path.empty()) {
            const auto want = markov_measure(hat, path).value;
            double got = 0;
            std::vector<std::uint64_t> br(path.size() - 1, 1);
            std::function<void(std::size_t)> tuples = [&](std::size_t k) {
                if (k == br.size()) {
                    got += cylinder_measure(d, Cylinder{path, br}, MeasureRoute::parry).value;
                    return;
                }
                for (std::uint64_t b = 1; b <= d.A.at(path[k], path[k + 1]); ++b) {
                    br[k] = b;
                    tuples(k + 1);
                }
            };
            if (path.size() == 1)
                got = cylinder_measure(d, Cylinder{path, {}}, MeasureRoute::markov).value;
            else
                tuples(0);
            CHECK(std::fabs(got - want) < 1e-12);
            ++checked;
        }
        if (path.size() == 6) return;
        for (std::size_t v = 0; v < 2; ++v) {
            if (!path.empty() && d.A.at(path.back(), v) == 0) continue;
            path.push_back(v);
            rec();
            path.pop_back();
        }
    };
    rec();
    CHECK(checked > 20);
}

TEST_CASE("unequal multiplicities can still share the stochastic matrix") {
    const auto d = parry_data(bin({"11"}, {{"00", 2}, {"10", 4}}));
    CHECK(std::fabs(d.root.theta - (1 + std::sqrt(5.0))) < 1e-12);
    const auto hat = shannon_parry_matrix(rows({{1, 1}, {1, 0}}));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(std::fabs(hat.at(i, j) - d.P.at(i, j)) < 1e-12);
}

TEST_CASE("escape rate example") {
    const auto s = bin({"00"}, {{"01", 2}});
    const auto A = build_adjacency(s);
    CHECK(A.entries == std::vector<std::uint64_t>{0, 2, 1, 1});
    const auto W = parse_cylinder(s, A, "0*1#2,1*1#1");
    const auto r = escape_rate(s, W, 12);
    CHECK(r.h[2] == 7);
    REQUIRE(r.tau);
    CHECK((*r.tau)[3] == 6);
    CHECK(s.render(r.w) == "011");
    CHECK(r.w_multiplicity == 2);
    REQUIRE(r.log_theta_w);
    CHECK(r.log_lambda > *r.log_theta_w);
    CHECK_FALSE(r.tau_consistent.has_value());
    for (std::size_t n = 0; n <= 8; ++n) CHECK(r.h[n] == brute_avoiding(A, W, n));
}

TEST_CASE("escape counts match brute force on other holes") {
    const auto s = bin({"11"}, {{"00", 2}});
    const auto A = build_adjacency(s);
    for (const char* hole : {"0*0#1", "0*0#2,0*0#2", "0*0#1,0*0#2,0*0#1", "0*1#1,1*0#1"}) {
        const auto W = parse_cylinder(s, A, hole);
        const auto h = avoiding_path_counts(A, W, 8);
        for (std::size_t n = 0; n <= 8; ++n) CHECK(h[n] == brute_avoiding(A, W, n));
    }
}

TEST_CASE("escape with a multiplicity-one hole matches the forbidden-word count") {
    const auto s = bin({"11"}, {});
    const auto A = build_adjacency(s);
    const auto r = escape_rate(s, parse_cylinder(s, A, "0*1#1,1*0#1"), 10);
    REQUIRE(r.tau_consistent);
    CHECK(*r.tau_consistent);
}

TEST_CASE("hole covering everything") {
    const auto s = make_spec({"0"}, {}, {});
    const auto A = build_adjacency(s);
    const auto h = avoiding_path_counts(A, parse_cylinder(s, A, "0*0#1"), 5);
    CHECK(h[0] == 1);
    for (std::size_t n = 1; n <= 5; ++n) CHECK(h[n] == 0);
}

TEST_CASE("random specs: stochastic and consistency checks") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = testing_support::random_spec(rng);
        const auto d = parry_data(s);
        CHECK(d.P.row_defect() <= 1e-12);
        CHECK(d.P.stationarity_defect() <= 1e-12);
        CHECK(kolmogorov_check(d, 4).ok());
        CHECK(pushforward_check(d, 4).ok());
        if (d.norm.property_p && d.norm.agree) CHECK(kolmogorov_check(d, 3, MeasureRoute::combinatorial).ok());
    }
}
