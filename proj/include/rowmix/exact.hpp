#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rowmix/matrix.hpp"

namespace rowmix {

// Enumerates every profile with the first column pinned to identity (relabel
// rows to see no optimum is lost). Refuses instead of running past the budget.
struct BruteConfig {
    std::int64_t max_profiles = 10'000'000;
};

MixResult brute_force_gamma(const Matrix& A, const BruteConfig& cfg = {});
MixResult brute_force_beta(const Matrix& A, const BruteConfig& cfg = {});

// Dynamic program over canonical states: the sorted multiset of partial row
// sums after consuming a prefix of columns. Rows are exchangeable from the
// viewpoint of the remaining columns, so sorting loses nothing.
struct DpConfig {
    std::int64_t max_states = 500'000;
    std::int64_t max_expansions = 20'000'000;
};

MixResult dp_gamma(const Matrix& A, const DpConfig& cfg = {});

struct DpState {
    std::vector<std::int64_t> partial_sums;  // non-decreasing
    int columns_consumed = 0;
};

// All reachable states with exactly `columns_consumed` columns placed,
// computed without the final-column shortcut. Introspection for tests.
std::vector<DpState> dp_reachable(const Matrix& A, int columns_consumed,
                                  const DpConfig& cfg = {});

struct DefectLedger {
    std::int64_t target = 0;                // row sum every row is pushed toward
    std::vector<std::int64_t> defects;      // target - current row sum, per row
    std::int64_t total_defect = 0;          // sum of |defects|
};

struct ZeroOneOutcome {
    std::optional<MixResult> mix;  // engaged iff m divides the number of ones
    std::int64_t total = 0;        // count of ones; with m this witnesses refusal
    std::int64_t swaps = 0;
    DefectLedger ledger;           // final ledger; meaningful only when mix is engaged
};

// Linear-time mixability for 0/1 matrices via defect-guided swaps.
ZeroOneOutcome zero_one_mixability(const Matrix& A);

// Matrices over at most two values {a < b}: map to bits, balance rows to
// ceil(total_bits / m) ones, read gamma back as d*a + (b-a)*that.
MixResult two_value_gamma(const Matrix& A);

// d = 2: sort one column up, the other down. Exact for both objectives.
MixResult gamma_two_columns(const Matrix& A);
MixResult beta_two_columns(const Matrix& A);

} // namespace rowmix
