#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rowmix/matrix.hpp"
#include "rowmix/rational.hpp"
#include "rowmix/varbounds.hpp"

namespace rowmix {

// Instance CSV: one matrix row per line, cells are exact rationals
// ("3", "-1.25", "7/2"), blank lines ignored. '#' lines are comments; a
// comment may carry `m=<m> d=<d> scale=<s>` fields, which are cross-checked
// against the data, and every cell is divided by the declared scale. The
// writer always emits integer cells plus the scale header, so any exactly
// representable matrix round-trips.
Matrix parse_instance(const std::string& text);
std::string write_instance(const Matrix& A);
Matrix load_instance(const std::string& path);
void save_instance(const std::string& path, const Matrix& A);

// Marginals CSV: one marginal per column, one grid row per line for
// r = 0..N, optional `# N=<N> d=<d>` header cross-checked against the data.
std::vector<DiscreteMarginal> parse_marginals(const std::string& text);
std::string write_marginals(const std::vector<DiscreteMarginal>& marginals);
std::vector<DiscreteMarginal> load_marginals(const std::string& path);

// A stored row sum converted back to the original units of a scaled matrix:
// (stored - d*shift) / scale.
Rational row_value(const Matrix& A, std::int64_t stored_row_sum);

// Flags echoed into every document so a run can be reproduced byte for byte.
struct RunParameters {
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> restarts;
    std::optional<Rational> epsilon;
    std::optional<std::int64_t> budget_steps;
    std::optional<std::int64_t> budget_states;
};

// Machine-readable run records. Values and row sums are exact rational
// strings in the instance's original units; the profile is d arrays of m
// 0-based destination rows. Field order is fixed, so identical runs render
// to identical bytes except for timing_ms.
nlohmann::ordered_json result_document(const Matrix& A, const MixResult& result,
                                       const std::string& solver, const RunParameters& params,
                                       double timing_ms);

// Mixability decision. Without a witness the instance was rejected because
// the row count does not divide the grand total; value then carries the
// non-integer equal-split target, which certifies the rejection by itself.
nlohmann::ordered_json check_document(const Matrix& A, bool mixable,
                                      const std::optional<MixResult>& witness,
                                      const std::string& solver, const RunParameters& params,
                                      double timing_ms);

nlohmann::ordered_json var_bounds_document(const VarBoundReport& report,
                                           const RunParameters& params, double timing_ms);

std::string render_document(const nlohmann::ordered_json& doc);

// Copy with the timing field removed, for byte-identity comparisons.
nlohmann::ordered_json strip_timing(nlohmann::ordered_json doc);

} // namespace rowmix
