#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sft/langmodel.hpp"
#include "sft/ratfield.hpp"

namespace sft {

RatFun to_ratfun(const CorrelationPoly& p);

// The (l+s) x (l+s) matrix P(z) indexed by r_1..r_l, a_1..a_s. Throws
// DomainError unless F and R together are reduced; pass
// allow_non_reduced to build the same formula regardless.
RatMat build_P(const ShiftSpec& spec, bool allow_non_reduced = false);
RatMat build_D(const ShiftSpec& spec);
// D^{-1} P^T D.
RatMat build_Q(const ShiftSpec& spec, bool allow_non_reduced = false);
// P bordered by the row and column of the counting equation for f.
RatMat build_L(const ShiftSpec& spec);

enum class SystemMode { reduced, non_reduced };

struct GenFunSystem {
    RatMat matrix;  // unknowns: F, G_r in R order, F_a in F order
    RatMat rhs;     // column (z, 0, ..., 0)
    std::vector<std::string> unknowns;
    SystemMode mode = SystemMode::reduced;
};

GenFunSystem build_system(const ShiftSpec& spec);

struct GenFunSolution {
    RatFun F;
    std::vector<RatFun> G;
    std::vector<RatFun> Fa;
    // Closed forms through row sums of P^{-1} and Q^{-1}; reduced case only.
    std::optional<RatFun> F_via_R;
    std::optional<RatFun> F_via_S;
    std::vector<RatFun> R_sums;
    std::vector<RatFun> S_sums;
    SystemMode mode = SystemMode::reduced;
};

// Solves the system exactly. In the reduced case also evaluates both
// closed forms and throws NumericError if any of the three disagree.
GenFunSolution solve_F(const ShiftSpec& spec);

// z * sum (1 - 1/m_i) R_i(z) - z * sum R_{l+j}(z) for the given row sums.
RatFun combine_row_sums(const ShiftSpec& spec, const std::vector<RatFun>& sums);

// R(z), so that F(z) = z / (z - q + R(z)). For non-reduced specs this is
// read off the solved F.
RatFun R_of_z(const ShiftSpec& spec);
RatFun R_of_z(const ShiftSpec& spec, const GenFunSolution& sol);

}  // namespace sft
