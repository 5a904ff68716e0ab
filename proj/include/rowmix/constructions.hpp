#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rowmix/matrix.hpp"

namespace rowmix {

// Block combination of two constant-row-sum matrices:
// C[m2*i + k][d2*j + l] = A[i][j] + B[k][l]. Every row sum of the result is
// d2*rowsum(A) + d1*rowsum(B).
Matrix glue(const Matrix& A, const Matrix& B);

struct ConsecutiveSpec {
    int N = 1;
    int d = 1;
    std::optional<PermutationProfile> profile;  // applied when present
};

// Columns of 1..N, each permuted per the requested profile (identity without one).
Matrix consecutive_matrix(const ConsecutiveSpec& spec);

// Common row sum of the mixed (d^k, d) consecutive-integers matrix,
// d*(d^k+1)/2 in closed form.
std::int64_t a_d_k(int d, int k);

// The mixed (d^k, d) matrix with all row sums equal to a_d_k(d, k), built by
// stacking scaled cyclic layers, plus the profile that rearranges the
// identity-ordered consecutive matrix into it.
std::pair<Matrix, PermutationProfile> mixable_consecutive_construction(
    int d, int k, std::int64_t max_rows = 1'000'000);

// Bracket for beta and gamma of the (N, d) consecutive matrix from the
// nearest powers of d; collapses to a point when N is an exact power.
std::pair<std::int64_t, std::int64_t> consecutive_bounds(std::int64_t N, int d);

// N rows, three identical columns 1..N in ascending order: the instance the
// column re-sorting heuristic handles badly.
Matrix adversarial_identity(int N);

// Two rows: the given values on top of zeros. Mixable iff the values split
// into two halves of equal sum.
Matrix partition_instance(const std::vector<std::int64_t>& values);

// Three columns from three sequences. Mixable iff the matching instance has a
// perfect split hitting the common target.
Matrix n3dm_instance(const std::vector<std::int64_t>& a,
                     const std::vector<std::int64_t>& b,
                     const std::vector<std::int64_t>& c);

struct SeparatorInstance {
    Matrix matrix;           // A with one extra column (K', 2K', ..., mK')
    std::int64_t k_prime;    // max(2*d*max|entry|, K) + 1 unless overridden
};

// Stress generator: the appended spread-out column dominates every row sum,
// so additive-error solvers are forced to solve the original instance.
SeparatorInstance separator_column_instance(
    const Matrix& A, std::int64_t K,
    std::optional<std::int64_t> k_prime_override = std::nullopt);

} // namespace rowmix
