#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sft/genfun.hpp"
#include "sft/langmodel.hpp"
#include "sft/measures.hpp"
#include "sft/spectral.hpp"
#include "sft/verify.hpp"

namespace sft {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "sftool";
inline constexpr const char* kToolVersion = "0.1.0";

// {"alphabet": [...], "forbidden": [...], "repeated": [{"word", "multiplicity"}]}.
// Other keys are ignored. Throws SpecError on malformed or invalid input.
ShiftSpec spec_from_json(const Json& j);
Json spec_to_json(const ShiftSpec& spec);

// Reads a spec file, or standard input when path is "-". IoError when the
// file cannot be read or is not JSON.
ShiftSpec load_spec(const std::string& path);
ShiftSpec read_spec(std::istream& in, const std::string& origin);

// A spec file together with its optional "name" and "expected" blocks.
// "expected" holds {"f": [f(1), f(2), ...], "g": {word: [...]}, "fa": {word: [...]}}.
struct SpecDocument {
    ShiftSpec spec;
    std::string name;
    ExpectedCounts expected;
};

SpecDocument load_spec_document(const std::string& path);
SpecDocument spec_document_from_json(const Json& j);

// Decimal string with 15 significant digits; "inf", "-inf", "nan" otherwise.
std::string format_double(double x);

Json poly_json(const Poly& p);
Json ratfun_json(const RatFun& f);
Json ratmat_json(const RatMat& m);
Json adjacency_json(const ShiftSpec& spec, const AdjMatrix& A);

Json enumerate_report(const ShiftSpec& spec, std::size_t max_n, std::uint64_t budget);
Json genfun_report(const ShiftSpec& spec, std::size_t series_n = 12);
Json perron_report(const ShiftSpec& spec);
// routes empty means all three.
Json measure_report(const ShiftSpec& spec, const std::string& cylinder,
                    const std::vector<MeasureRoute>& routes);
Json escape_report(const ShiftSpec& spec, const std::string& word, std::size_t max_n,
                   std::uint64_t budget);
Json verify_report(const ShiftSpec& spec, const VerifyResult& result, const VerifyOptions& opt);

// Plain-text rendering of any of the reports above.
std::string render_table(const Json& report);

}  // namespace sft
