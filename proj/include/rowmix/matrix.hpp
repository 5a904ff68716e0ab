#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rowmix/rational.hpp"

namespace rowmix {

// Row-major integer matrix. Rational inputs are scaled to integers at
// ingestion; (scale, shift) recover the original values as
// original = (stored - shift) / scale.
struct Matrix {
    int m = 0;
    int d = 0;
    std::vector<std::int64_t> entries;
    std::int64_t scale = 1;
    std::int64_t shift = 0;

    Matrix() = default;
    Matrix(int rows, int cols, std::int64_t fill = 0);
    static Matrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

    std::int64_t& at(int i, int j) {
        return entries[static_cast<std::size_t>(i) * d + j];
    }
    std::int64_t at(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * d + j];
    }
};

// One permutation per column. perms[j] maps source row to destination row:
// applying the profile puts A(i,j) at row perms[j][i] of the result.
struct PermutationProfile {
    std::vector<std::vector<int>> perms;

    static PermutationProfile identity(int m, int d);
};

bool is_permutation(const std::vector<int>& p);
std::vector<int> inverse_permutation(const std::vector<int>& p);

enum class Objective { gamma, beta, mixability };

enum class StatusKind {
    exact,
    heuristic_lower_bound,
    heuristic_upper_bound,
    ratio_bound,
};

struct Status {
    StatusKind kind = StatusKind::exact;
    Rational ratio{1};  // only meaningful for ratio_bound

    static Status exact() { return {StatusKind::exact, Rational(1)}; }
    static Status heuristic_lower() { return {StatusKind::heuristic_lower_bound, Rational(1)}; }
    static Status heuristic_upper() { return {StatusKind::heuristic_upper_bound, Rational(1)}; }
    static Status ratio_bound(const Rational& r) { return {StatusKind::ratio_bound, r}; }
};

struct MixResult {
    Objective objective = Objective::gamma;
    std::int64_t value = 0;
    PermutationProfile profile;
    Status status;
    std::vector<std::int64_t> row_sums;
    std::string note;  // caveats (internal shifts, fallbacks), empty if none
};

Matrix apply_profile(const Matrix& A, const PermutationProfile& profile);
std::vector<std::int64_t> row_sums(const Matrix& A);
std::int64_t grand_total(const Matrix& A);

// total/m when it divides evenly; otherwise the matrix cannot be completely
// mixable and there is no target.
std::optional<std::int64_t> target_row_sum(const Matrix& A);

// A' with A'_ij = l - A_ij for l = max entry. Minimizing the max row sum of
// A' maximizes the min row sum of A.
std::pair<Matrix, std::int64_t> complement(const Matrix& A);
std::int64_t beta_from_gamma(std::int64_t gamma_of_complement, int d, std::int64_t l);

// True iff some common reordering makes x non-decreasing and y non-increasing;
// equivalently (x_i - x_k)(y_i - y_k) <= 0 for every index pair.
bool oppositely_ordered(const std::vector<std::int64_t>& x,
                        const std::vector<std::int64_t>& y);

Matrix drop_column(const Matrix& A, int j);

// Adds mu = -min(A) to every entry so the smallest becomes zero. Row sums all
// move by mu*d, so optimal profiles carry over unchanged.
std::pair<Matrix, std::int64_t> shift_normalize(const Matrix& A);

// Fills row_sums and value from the arranged matrix so the result invariants
// hold by construction.
MixResult result_for_profile(Objective objective, const Matrix& A,
                             PermutationProfile profile, Status status);

// Profile mapping A onto B, where every column of B must be a rearrangement
// of the same column of A. Equal values are matched in row order.
PermutationProfile profile_between(const Matrix& A, const Matrix& B);

} // namespace rowmix
