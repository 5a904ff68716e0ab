#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "rowmix/checked.hpp"
#include "rowmix/exact.hpp"
#include "rowmix/swapping.hpp"
#include "rowmix/varbounds.hpp"

namespace rowmix {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    const std::int64_t q = a / b;
    return q + ((a % b != 0 && (a % b > 0) == (b > 0)) ? 1 : 0);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    const std::int64_t q = a / b;
    return q - ((a % b != 0 && (a % b > 0) != (b > 0)) ? 1 : 0);
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    return checked_mul(a / std::gcd(a, b), b);
}

std::pair<int, int> band_rows(StepRange range, int N) {
    return range == StepRange::first_n ? std::pair<int, int>{0, N - 1}
                                       : std::pair<int, int>{1, N};
}

MixResult solve_beta(const Matrix& A, const VarBoundSolver& solver) {
    switch (solver.kind) {
        case VarBoundSolver::Kind::brute: return brute_force_beta(A);
        case VarBoundSolver::Kind::dp: {
            const auto [comp, l] = complement(A);
            const auto inner = dp_gamma(comp);
            auto out = result_for_profile(Objective::beta, A, inner.profile, Status::exact());
            if (out.value != beta_from_gamma(inner.value, A.d, l))
                throw std::logic_error("complement witness does not transfer");
            return out;
        }
        case VarBoundSolver::Kind::swapping:
            return randomized_beta(A, solver.restarts, solver.seed);
    }
    throw std::invalid_argument("unknown solver");
}

MixResult solve_gamma(const Matrix& A, const VarBoundSolver& solver) {
    switch (solver.kind) {
        case VarBoundSolver::Kind::brute: return brute_force_gamma(A);
        case VarBoundSolver::Kind::dp: return dp_gamma(A);
        case VarBoundSolver::Kind::swapping:
            return randomized_gamma(A, solver.restarts, solver.seed);
    }
    throw std::invalid_argument("unknown solver");
}

std::string solver_name(const VarBoundSolver& solver) {
    switch (solver.kind) {
        case VarBoundSolver::Kind::brute: return "brute";
        case VarBoundSolver::Kind::dp: return "dp";
        case VarBoundSolver::Kind::swapping:
            return "swapping(restarts=" + std::to_string(solver.restarts) +
                   ", seed=" + std::to_string(solver.seed) + ")";
    }
    throw std::invalid_argument("unknown solver");
}

} // namespace

DiscreteMarginal DiscreteMarginal::from_quantiles(std::vector<Rational> q) {
    if (q.size() < 2) throw std::invalid_argument("needs at least two quantile values");
    for (std::size_t r = 1; r < q.size(); ++r)
        if (q[r] < q[r - 1])
            throw std::invalid_argument("quantiles must be non-decreasing");
    DiscreteMarginal out;
    out.N = static_cast<int>(q.size()) - 1;
    out.quantiles = std::move(q);
    return out;
}

Rational DiscreteMarginal::underline(const Rational& x) const {
    const auto end = quantiles.begin() + N;  // steps 0..N-1
    const auto count = std::upper_bound(quantiles.begin(), end, x) - quantiles.begin();
    return Rational(count, N);
}

Rational DiscreteMarginal::overline(const Rational& x) const {
    const auto first = quantiles.begin() + 1;  // steps 1..N
    const auto count = std::upper_bound(first, quantiles.end(), x) - first;
    return Rational(count, N);
}

DiscreteMarginal discretize_marginal(const std::vector<Rational>& samples, int N) {
    if (N < 1) throw std::invalid_argument("needs N >= 1");
    if (samples.empty()) throw std::invalid_argument("needs at least one sample");
    auto sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const std::int64_t n = static_cast<std::int64_t>(sorted.size());
    std::vector<Rational> q(N + 1);
    for (int r = 0; r <= N; ++r)
        q[r] = sorted[static_cast<std::size_t>(std::min(n - 1, r * n / N))];
    return DiscreteMarginal::from_quantiles(std::move(q));
}

DiscreteMarginal discretize_marginal(const std::function<Rational(int)>& quantile_at, int N) {
    if (N < 1) throw std::invalid_argument("needs N >= 1");
    std::vector<Rational> q(N + 1);
    for (int r = 0; r <= N; ++r) q[r] = quantile_at(r);
    return DiscreteMarginal::from_quantiles(std::move(q));
}

Matrix quantile_matrix(const std::vector<DiscreteMarginal>& marginals, int r_lo, int r_hi) {
    if (marginals.empty()) throw std::invalid_argument("needs at least one marginal");
    const int N = marginals.front().N;
    for (const auto& marg : marginals)
        if (marg.N != N) throw std::invalid_argument("marginals disagree on N");
    if (r_lo < 0 || r_lo > r_hi || r_hi > N)
        throw std::invalid_argument("row range does not fit the grid");

    std::int64_t scale = 1;
    for (const auto& marg : marginals)
        for (int r = r_lo; r <= r_hi; ++r) scale = lcm64(scale, marg.quantiles[r].den);

    Matrix A(r_hi - r_lo + 1, static_cast<int>(marginals.size()));
    A.scale = scale;
    for (int i = 0; i < A.m; ++i)
        for (int j = 0; j < A.d; ++j) {
            const Rational& v = marginals[j].quantiles[r_lo + i];
            A.at(i, j) = checked_mul(v.num, scale / v.den);
        }
    return A;
}

VarBoundReport var_bounds(const std::vector<DiscreteMarginal>& marginals, const Rational& alpha,
                          int N, const VarBoundConfig& cfg) {
    if (marginals.empty()) throw std::invalid_argument("needs at least one marginal");
    for (const auto& marg : marginals)
        if (marg.N != N) throw std::invalid_argument("marginals disagree on N");
    if (!(Rational(0) < alpha && alpha < Rational(1)))
        throw std::invalid_argument("alpha must lie strictly between 0 and 1");

    // smallest r with r/N >= alpha and largest r with r/N <= alpha
    const std::int64_t alpha_n = checked_mul(alpha.num, N);
    const int up_from = static_cast<int>(ceil_div(alpha_n, alpha.den));
    const int lo_to = static_cast<int>(floor_div(alpha_n, alpha.den));

    const auto [u_first, u_last] = band_rows(cfg.upper_steps, N);
    const auto [l_first, l_last] = band_rows(cfg.lower_steps, N);
    const int up_lo = std::max(up_from, u_first);
    const int lo_hi = std::min(lo_to, l_last);
    if (up_lo > u_last || lo_hi < l_first)
        throw std::invalid_argument("tail selection is empty for this alpha and N");

    const Matrix upper_tail = quantile_matrix(marginals, up_lo, u_last);
    const Matrix lower_tail = quantile_matrix(marginals, l_first, lo_hi);

    const MixResult upper_run = solve_beta(upper_tail, cfg.solver);
    const MixResult lower_run = solve_gamma(lower_tail, cfg.solver);

    VarBoundReport report;
    report.alpha = alpha;
    report.upper = Rational(upper_run.value, upper_tail.scale);
    report.lower = Rational(lower_run.value, lower_tail.scale);
    report.solver = solver_name(cfg.solver);
    report.upper_status = upper_run.status;
    report.lower_status = lower_run.status;
    report.note = "upper side: best smallest row sum over rearrangements of the rows at or "
                  "above alpha; lower side: best largest row sum over rearrangements of the "
                  "rows at or below alpha";
    if (cfg.solver.kind == VarBoundSolver::Kind::swapping)
        report.note += "; heuristic sides shrink the interval, never widen it";
    return report;
}

} // namespace rowmix
