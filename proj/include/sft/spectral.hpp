#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sft/langmodel.hpp"
#include "sft/ratfield.hpp"

namespace sft {

// Non-negative integer matrix indexed by labelled words, read as the
// adjacency matrix of a multigraph.
struct AdjMatrix {
    std::vector<Word> labels;
    std::vector<std::uint64_t> entries;  // row-major

    std::size_t size() const noexcept { return labels.size(); }
    std::uint64_t at(std::size_t i, std::size_t j) const { return entries[i * size() + j]; }
    std::uint64_t& at(std::size_t i, std::size_t j) { return entries[i * size() + j]; }
    std::optional<std::size_t> index_of(const Word& w) const;
    std::uint64_t max_row_sum() const;

    static AdjMatrix from_rows(const std::vector<std::vector<std::uint64_t>>& rows,
                               std::vector<Word> labels = {});

    friend bool operator==(const AdjMatrix&, const AdjMatrix&) = default;
};

// A_XY = k(X*Y) on allowed words of length block_length() - 1.
AdjMatrix build_adjacency(const ShiftSpec& spec);
// Same indexing with A_XY = m(X*Y).
AdjMatrix build_tilde_adjacency(const ShiftSpec& spec);

bool is_irreducible(const AdjMatrix& A);

struct PowerIteration {
    double theta = 0.0;
    std::vector<double> vector;  // right eigenvector, max entry 1
    std::size_t iterations = 0;
    bool converged = false;
};

// Power iteration on A + I with Collatz-Wielandt stopping bounds.
PowerIteration power_iteration(const AdjMatrix& A, double tol = 1e-12,
                               std::size_t max_iter = 100000);

struct PerronRoot {
    RootCertificate certificate;  // combinatorial route
    double theta = 0.0;
    double theta_power = 0.0;
    double route_agreement = 0.0;
    std::string route;  // which rational function was used
};

// Largest real zero of z - q + R(z) (reduced) or largest real pole of F(z)
// (non-reduced), cross-checked by power iteration. Throws DomainError on
// reducible A unless allow_reducible, NumericError when the routes differ
// by more than 1e-9.
PerronRoot perron_root(const ShiftSpec& spec, bool allow_reducible = false);

// Largest eigenvalue of a general irreducible matrix via its
// characteristic polynomial, with the same certificate.
PerronRoot perron_root(const AdjMatrix& A);

struct PerronVectors {
    std::vector<Word> labels;
    std::vector<double> U;  // left, as given by the closed formula
    std::vector<double> V;  // right
    std::optional<std::vector<mpq_class>> U_exact;  // when theta is an integer
    std::optional<std::vector<mpq_class>> V_exact;
    std::vector<double> U_normalized;  // positive, U_n . V_n = 1
    std::vector<double> V_normalized;
};

PerronVectors perron_vectors(const ShiftSpec& spec, const PerronRoot& root);
PerronVectors perron_vectors(const ShiftSpec& spec);

struct PropertyPWitness {
    Word X, Y, Z, W;
};

// Bounded search for words Z (X to Y) and W (Y to Y) of multiplicity 1.
// nullopt means unknown, never a proof that the property fails.
std::optional<PropertyPWitness> property_p_witness(const ShiftSpec& spec,
                                                   std::size_t length_bound = 0);

struct Normalization {
    double dot = 0.0;          // U^T V from the closed-form vectors
    double formula = 0.0;      // theta^{p-1} (1 + R'(theta))
    std::optional<mpq_class> formula_exact;
    bool agree = false;        // within 1e-9
    bool property_p = false;   // a witness was found
};

Normalization normalization(const ShiftSpec& spec, const PerronRoot& root,
                            const PerronVectors& vec);

struct SpectralReport {
    AdjMatrix A;
    PerronRoot root;
    PerronVectors vectors;
    Normalization norm;
    std::optional<PropertyPWitness> witness;
    double entropy = 0.0;
    std::size_t estimate_n = 0;
    double entropy_estimate = 0.0;  // (1/n) ln |Lambda_n|
    double residual_right = 0.0;    // |AV - theta V|_inf / |V|_inf
    double residual_left = 0.0;
    RatFun R;
};

double entropy(const ShiftSpec& spec);
SpectralReport spectral_report(const ShiftSpec& spec);

// |AV - theta V|_inf / |V|_inf and the same for U^T A.
double right_residual(const AdjMatrix& A, double theta, const std::vector<double>& V);
double left_residual(const AdjMatrix& A, double theta, const std::vector<double>& U);

}  // namespace sft
