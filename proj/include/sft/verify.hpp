#pragma once

#include <map>
#include <string>
#include <vector>

#include "sft/langmodel.hpp"

namespace sft {

struct CheckResult {
    std::string name;
    bool passed = true;
    bool skipped = false;
    std::string detail;
};

struct VerifyResult {
    std::vector<CheckResult> checks;

    bool passed() const;
    const CheckResult* find(const std::string& name) const;
};

// Reference counts for n = 1, 2, ...; g and fa are keyed by the rendered word.
struct ExpectedCounts {
    std::vector<mpz_class> f;
    std::map<std::string, std::vector<mpz_class>> g;
    std::map<std::string, std::vector<mpz_class>> fa;

    bool empty() const { return f.empty() && g.empty() && fa.empty(); }
    std::size_t longest() const;
};

struct VerifyOptions {
    std::size_t max_n = 10;
    std::size_t cylinder_edges = 4;  // Kolmogorov check depth
    std::size_t vertex_words = 4;    // push-forward check depth
    std::uint64_t budget = kDefaultBudget;
    ExpectedCounts expected;
};

// Runs every invariant the library can check for one spec: generating
// functions against brute force, the counting recurrence, Perron root
// routes, eigenvector residuals, the block-matrix power sums, and the
// measure identities. Checks whose preconditions fail are marked skipped.
VerifyResult verify_spec(const ShiftSpec& spec, const VerifyOptions& opt = {});

}  // namespace sft
