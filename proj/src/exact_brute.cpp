#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rowmix/errors.hpp"
#include "rowmix/exact.hpp"

namespace rowmix {

namespace {

// (m!)^(d-1), saturated once it passes any realistic budget.
std::int64_t profile_count_capped(int m, int d) {
    constexpr std::int64_t cap = INT64_MAX / 4;
    std::int64_t fact = 1;
    for (int k = 2; k <= m; ++k) {
        if (fact > cap / k) return cap;
        fact *= k;
    }
    std::int64_t count = 1;
    for (int j = 1; j < d; ++j) {
        if (count > cap / fact) return cap;
        count *= fact;
    }
    return count;
}

MixResult brute_core(const Matrix& A, Objective objective, const BruteConfig& cfg) {
    const std::int64_t budget = std::min(cfg.max_profiles, INT64_MAX / 8);
    const std::int64_t count = profile_count_capped(A.m, A.d);
    if (count > budget)
        throw BudgetExceeded("brute force needs more than " +
                             std::to_string(cfg.max_profiles) +
                             " profiles for m=" + std::to_string(A.m) +
                             ", d=" + std::to_string(A.d) +
                             "; raise the budget or use the dp or swapping solvers");

    const bool maximize = objective == Objective::beta;
    // free[j] is the permutation for column j+1; column 0 stays identity
    std::vector<std::vector<int>> free_cols(A.d > 0 ? A.d - 1 : 0);
    for (auto& p : free_cols) {
        p.resize(A.m);
        std::iota(p.begin(), p.end(), 0);
    }

    std::int64_t best = maximize ? INT64_MIN : INT64_MAX;
    std::vector<std::vector<int>> best_free;
    std::vector<std::int64_t> sums(A.m);
    while (true) {
        for (int i = 0; i < A.m; ++i) sums[i] = A.at(i, 0);
        for (int j = 1; j < A.d; ++j) {
            const auto& p = free_cols[j - 1];
            for (int i = 0; i < A.m; ++i) sums[p[i]] += A.at(i, j);
        }
        const std::int64_t val = maximize
                                     ? *std::min_element(sums.begin(), sums.end())
                                     : *std::max_element(sums.begin(), sums.end());
        if (maximize ? val > best : val < best) {
            best = val;
            best_free = free_cols;
        }
        // odometer: rightmost column advances fastest, next_permutation wraps
        // back to identity exactly when it returns false
        int j = A.d - 2;
        while (j >= 0 && !std::next_permutation(free_cols[j].begin(), free_cols[j].end()))
            --j;
        if (j < 0) break;
    }

    PermutationProfile profile = PermutationProfile::identity(A.m, A.d);
    for (int j = 1; j < A.d; ++j) profile.perms[j] = best_free[j - 1];
    return result_for_profile(objective, A, std::move(profile), Status::exact());
}

} // namespace

MixResult brute_force_gamma(const Matrix& A, const BruteConfig& cfg) {
    return brute_core(A, Objective::gamma, cfg);
}

MixResult brute_force_beta(const Matrix& A, const BruteConfig& cfg) {
    return brute_core(A, Objective::beta, cfg);
}

} // namespace rowmix
