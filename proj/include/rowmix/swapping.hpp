#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rowmix/matrix.hpp"

namespace rowmix {

struct SwapStep {
    int column = -1;
    // the transposed rows in single-transposition mode; both -1 when the
    // whole column was re-sorted in one step
    int row_a = -1;
    int row_b = -1;
};

struct SwapTrace {
    std::vector<SwapStep> steps;
    std::vector<std::int64_t> min_row_sum_history;  // never decreases within a restart
    std::int64_t restarts_used = 0;
};

struct SwapConfig {
    std::int64_t step_budget = 0;       // 0 means 100*m*d
    bool single_transposition = false;  // swap one offending pair at a time
};

// Smallest column whose values are not oppositely ordered against the row
// sums of the remaining columns; nothing when every column passes.
std::optional<int> find_violating_column(const Matrix& A);

// Re-sorts column j against the other columns' row sums: ascending remainder
// gets descending column values, remainder ties broken by row index. The min
// row sum cannot drop.
Matrix swap_step(const Matrix& A, int j);

struct AntisortOutcome {
    Matrix matrix;
    SwapTrace trace;
    bool converged = false;  // false when stopped by cycle or budget
};

AntisortOutcome antisort_columns(const Matrix& A, const SwapConfig& cfg = {});

struct RestartConfig {
    SwapConfig swap;
    int threads = 1;
};

// Best min row sum over `restarts` randomly permuted copies. The profile is a
// witness, so the value is a certified lower bound on beta even though the
// status stays heuristic (exact only when one row or one column leaves no
// freedom).
MixResult randomized_beta(const Matrix& A, std::int64_t restarts, std::uint64_t seed,
                          const RestartConfig& cfg = {}, SwapTrace* trace = nullptr);

// Same search on the complement; maps back to a certified upper bound on gamma.
MixResult randomized_gamma(const Matrix& A, std::int64_t restarts, std::uint64_t seed,
                           const RestartConfig& cfg = {}, SwapTrace* trace = nullptr);

struct DiagnosticConfig {
    std::int64_t max_checks = 10'000'000;
};

// True iff every column has m distinct entries and every one-column-deleted
// submatrix keeps m distinct row sums under every arrangement; under that
// hypothesis each swap makes progress of at least 1. Exhaustive, so tiny
// matrices only.
bool distinct_rowsum_diagnostic(const Matrix& A, const DiagnosticConfig& cfg = {});

// Monte-Carlo frequency of an m-by-d matrix with entries uniform on
// {1..max_value} having m distinct row sums. Demo companion to the
// diagnostic; no threshold is claimed.
double distinct_rowsum_frequency(int m, int d, std::int64_t max_value, int samples,
                                 std::uint64_t seed);

} // namespace rowmix
