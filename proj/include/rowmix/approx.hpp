#pragma once

#include <cstdint>
#include <vector>

#include "rowmix/matrix.hpp"
#include "rowmix/rational.hpp"

namespace rowmix {

struct BottleneckMatching {
    std::vector<int> match;  // match[i] = column assigned to row i
    std::int64_t value = 0;  // largest cost used by the matching
};

// Minimizes the largest cost of a perfect matching: binary search over the
// distinct cost values with an augmenting-path feasibility test per probe.
BottleneckMatching bottleneck_assignment_2d(const std::vector<std::vector<std::int64_t>>& cost);

// Index view of a nonnegative m x 3 matrix for matching: index l names entry
// (l / 3, l % 3) and the three residue classes split the columns. Distances
// are half the sum of the two entries, so they are symmetric and satisfy the
// triangle inequality, and a three-class triple costs exactly the row sum it
// assembles.
struct TripartiteDistance {
    int m = 0;
    std::vector<std::int64_t> entry;  // entry[l] = A(l / 3, l % 3)

    static TripartiteDistance from_matrix(const Matrix& A);

    int klass(int l) const { return l % 3; }
    Rational dist(int i, int j) const;            // exact half-integer value
    std::int64_t dist2(int i, int j) const;       // doubled to stay integral
    std::int64_t triple_cost(int i, int j, int k) const;
};

// Which two columns are matched against each other before the third is
// attached. The reported result is the best over all configured orders.
enum class PairOrder { rg_then_b, rb_then_g, gb_then_r };

struct TwoApproxConfig {
    std::vector<PairOrder> orders = {PairOrder::rg_then_b};
};

// Sequential bottleneck matching on three columns: value is the max row sum
// of an explicit arrangement, at most twice the optimum for nonnegative
// entries. Negative input is shifted internally and noted in the result.
MixResult two_approx_gamma_d3(const Matrix& A, const TwoApproxConfig& cfg = {});

struct SameMultisetConfig {
    std::int64_t max_arrangements = 5'040;
    std::int64_t max_nodes = 20'000'000;
};

// Exact min-max row sum when every column holds the same value multiset:
// a column arrangement is one of the distinct orderings of that multiset, so
// the search runs over how many columns receive each ordering.
MixResult same_multiset_gamma(const Matrix& A, const SameMultisetConfig& cfg = {});

struct FixedValuesetConfig {
    std::int64_t max_patterns = 20'000;
    std::int64_t max_nodes = 20'000'000;
};

// Exact min-max row sum when entries come from a small declared value set:
// binary search on the answer over distinct row-pattern sums, with an integer
// feasibility search assembling rows out of patterns that respect the
// per-column value counts.
MixResult fixed_valueset_gamma(const Matrix& A, const std::vector<std::int64_t>& values,
                               const FixedValuesetConfig& cfg = {});

// (1 + eps)-approximation: rounds entries up to a grid of width
// eps * (max entry) / d, solves the rounded instance exactly over its grid
// levels, and evaluates the winning arrangement on the original matrix.
// Negative input is shifted internally and noted in the result.
MixResult ptas_gamma(const Matrix& A, const Rational& eps,
                     const FixedValuesetConfig& cfg = {});

} // namespace rowmix
