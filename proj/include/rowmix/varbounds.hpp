#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rowmix/matrix.hpp"
#include "rowmix/rational.hpp"

namespace rowmix {

// Quantiles of one marginal on the uniform grid 0/N, 1/N, ..., N/N. The two
// step functions bracketing the true distribution differ only in whether the
// first or the last grid step carries mass.
struct DiscreteMarginal {
    int N = 0;
    std::vector<Rational> quantiles;  // q_0..q_N, non-decreasing

    static DiscreteMarginal from_quantiles(std::vector<Rational> q);

    Rational underline(const Rational& x) const;  // mass of steps 0..N-1 at or below x
    Rational overline(const Rational& x) const;   // mass of steps 1..N at or below x
};

// Empirical quantiles of a sample set (sorted internally).
DiscreteMarginal discretize_marginal(const std::vector<Rational>& samples, int N);
// quantile_at(r) must return the value at probability r/N for r = 0..N.
DiscreteMarginal discretize_marginal(const std::function<Rational(int)>& quantile_at, int N);

// Rows r_lo..r_hi of the stacked quantile grid, one marginal per column.
// Rational entries are scaled to integers; the common denominator lands in
// the matrix scale.
Matrix quantile_matrix(const std::vector<DiscreteMarginal>& marginals, int r_lo, int r_hi);

// Which N of the N+1 grid rows a side may draw from.
enum class StepRange {
    first_n,  // rows 0..N-1, the band whose mass sits at the lower quantiles
    last_n,   // rows 1..N
};

struct VarBoundSolver {
    enum class Kind { brute, dp, swapping };
    Kind kind = Kind::dp;
    int restarts = 8;         // swapping only
    std::uint64_t seed = 0;   // swapping only
};

struct VarBoundConfig {
    VarBoundSolver solver;
    StepRange upper_steps = StepRange::last_n;
    StepRange lower_steps = StepRange::first_n;
};

struct VarBoundReport {
    Rational alpha;
    Rational lower;
    Rational upper;
    std::string solver;
    Status lower_status;  // exact, or a certified upper bound on the lower side
    Status upper_status;  // exact, or a certified lower bound on the upper side
    std::string note;
};

// Dependence-uncertainty bounds on the alpha-quantile of the row sums: the
// upper side maximizes the smallest row sum over rearrangements of the rows
// with r/N >= alpha, the lower side minimizes the largest row sum over the
// rows with r/N <= alpha. Heuristic solvers only ever shrink the interval.
VarBoundReport var_bounds(const std::vector<DiscreteMarginal>& marginals, const Rational& alpha,
                          int N, const VarBoundConfig& cfg = {});

} // namespace rowmix
