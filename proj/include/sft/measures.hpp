#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sft/langmodel.hpp"
#include "sft/spectral.hpp"

namespace sft {

// Row-stochastic matrix on the labels of an adjacency matrix, with its
// stationary vector. The exact form is filled when every entry is rational.
struct StochMat {
    std::vector<Word> labels;
    std::vector<double> entries;  // row-major
    std::vector<double> stationary;
    std::optional<std::vector<mpq_class>> exact;
    std::optional<std::vector<mpq_class>> stationary_exact;

    std::size_t size() const noexcept { return labels.size(); }
    double at(std::size_t i, std::size_t j) const { return entries[i * size() + j]; }
    // Largest |row sum - 1| and largest |rho P - rho| entry.
    double row_defect() const;
    double stationarity_defect() const;
};

// Perron data of an arbitrary irreducible matrix: root, positive right
// and left vectors with U.V = 1, exact when the root is an integer.
struct PerronPair {
    PerronRoot root;
    std::vector<double> U;
    std::vector<double> V;
    std::optional<std::vector<mpq_class>> U_exact;
    std::optional<std::vector<mpq_class>> V_exact;
};

PerronPair perron_pair(const AdjMatrix& A);

// P_XY = A_XY V_Y / (theta V_X), rho_X = U_X V_X; expects U.V = 1.
StochMat shannon_parry_matrix(const AdjMatrix& A, double theta, const std::vector<double>& U,
                              const std::vector<double>& V);
StochMat shannon_parry_matrix(const AdjMatrix& A, const PerronPair& pair);
StochMat shannon_parry_matrix(const AdjMatrix& A);

// A path in the multigraph of A: vertices X_1..X_{n+1} (label indices) and,
// for an edge cylinder, one branch index 1..A_{X_i X_{i+1}} per edge.
struct Cylinder {
    std::vector<std::size_t> vertices;
    std::vector<std::uint64_t> branches;  // empty for a vertex cylinder

    std::size_t edges() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    bool is_edge_form() const { return !branches.empty() || vertices.size() <= 1; }
};

// Throws DomainError unless consecutive vertices are joined in A and the
// branch indices are within range.
void validate_cylinder(const AdjMatrix& A, const Cylinder& c);

// Parses "X*Y#j" steps separated by commas or spaces (branch defaults to 1)
// or a plain symbol word of length >= p - 1 as a vertex cylinder.
Cylinder parse_cylinder(const ShiftSpec& spec, const AdjMatrix& A, const std::string& text);
std::string render_cylinder(const ShiftSpec& spec, const AdjMatrix& A, const Cylinder& c);

enum class MeasureRoute { parry, combinatorial, markov };
std::string to_string(MeasureRoute r);
MeasureRoute parse_route(const std::string& s);

struct MeasureReport {
    double value = 0.0;
    std::optional<mpq_class> exact;
    MeasureRoute route = MeasureRoute::parry;
};

// Everything the cylinder formulas need for one spec.
struct ParryData {
    AdjMatrix A;
    PerronRoot root;
    PerronVectors vectors;
    Normalization norm;
    PerronPair normalized;  // the closed-form vectors rescaled to U.V = 1
    StochMat P;
    std::size_t p = 2;
};

ParryData parry_data(const ShiftSpec& spec);

MeasureReport cylinder_measure(const ParryData& d, const Cylinder& c, MeasureRoute route);

// rho_{X_1} P_{X_1X_2} ... P_{X_nX_{n+1}} for a vertex word.
MeasureReport markov_measure(const StochMat& P, const std::vector<std::size_t>& vertices);

// Drops branch indices.
Cylinder project_pi(const Cylinder& c);
// Number of edge cylinders over a vertex word: product of the A entries.
mpz_class preimage_count(const AdjMatrix& A, const std::vector<std::size_t>& vertices);

struct ConsistencyReport {
    std::size_t checked = 0;
    double max_error = 0.0;
    bool exact = false;  // comparisons were done in rational arithmetic
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

// For every vertex word with up to n_max vertices, compares the Markov
// measure nu(C_W) with the sum of mu over all edge cylinders above it.
ConsistencyReport pushforward_check(const ParryData& d, std::size_t n_max, double tol = 1e-9);

// mu(C_W) against the sum over one-edge extensions, every edge cylinder of
// up to n_max edges, using the given route.
ConsistencyReport kolmogorov_check(const ParryData& d, std::size_t n_max,
                                   MeasureRoute route = MeasureRoute::parry, double tol = 1e-9);

// A = L P where L is the lcm of the denominators of P. Throws DomainError
// if P is not row-stochastic.
AdjMatrix lift_rational_stochastic(const std::vector<std::vector<mpq_class>>& P,
                                   std::vector<Word> labels = {});

struct EscapeReport {
    std::vector<mpz_class> h;  // h[n] for n = 0..n_max, paths of n edges avoiding W
    double log_lambda = 0.0;   // ln(h[n_max] / h[n_max - 1])
    double theta = 0.0;
    double rho = 0.0;          // ln(theta) - log_lambda
    Word w;                    // vertex word under W
    mpz_class w_multiplicity;
    std::optional<std::vector<mpz_class>> tau;  // tau[n], n = 0..n_max + p - 1
    std::optional<double> log_theta_w;          // ln(tau[n_max] / tau[n_max - 1])
    std::optional<bool> tau_consistent;         // h(n - p + 1) = tau(n) when m(w) = 1
};

// Paths in the multigraph of A with up to n_max edges that avoid the edge
// word W (automaton over edges, exact counts).
std::vector<mpz_class> avoiding_path_counts(const AdjMatrix& A, const Cylinder& W,
                                            std::size_t n_max);

EscapeReport escape_rate(const ShiftSpec& spec, const Cylinder& W, std::size_t n_max,
                         std::uint64_t budget = kDefaultBudget);

}  // namespace sft
