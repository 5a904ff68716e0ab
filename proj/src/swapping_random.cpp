#include <algorithm>
#include <stdexcept>
#include <thread>

#include "rowmix/checked.hpp"
#include "rowmix/rng.hpp"
#include "rowmix/swapping.hpp"

namespace rowmix {

namespace {

// copy of A with columns 1..d-1 independently shuffled; column 0 stays put
// because a shared row relabeling changes nothing
Matrix permuted_copy(const Matrix& A, std::uint64_t seed, std::uint64_t restart) {
    auto rng = derive_stream(seed, restart);
    Matrix out = A;
    std::vector<std::int64_t> col(A.m);
    for (int j = 1; j < A.d; ++j) {
        for (int i = 0; i < A.m; ++i) col[i] = A.at(i, j);
        fisher_yates(col, rng);
        for (int i = 0; i < A.m; ++i) out.at(i, j) = col[i];
    }
    return out;
}

AntisortOutcome run_restart(const Matrix& A, std::uint64_t seed, std::uint64_t restart,
                            const SwapConfig& cfg) {
    return antisort_columns(permuted_copy(A, seed, restart), cfg);
}

std::int64_t outcome_value(const AntisortOutcome& out) {
    const auto sums = row_sums(out.matrix);
    return *std::min_element(sums.begin(), sums.end());
}

} // namespace

MixResult randomized_beta(const Matrix& A, std::int64_t restarts, std::uint64_t seed,
                          const RestartConfig& cfg, SwapTrace* trace) {
    if (restarts < 1) throw std::invalid_argument("needs at least one restart");

    // values for every restart first; the reduction order is then fixed no
    // matter how the work was scheduled
    std::vector<std::int64_t> values(static_cast<std::size_t>(restarts));
    const int workers = std::max(1, std::min<int>(cfg.threads, static_cast<int>(restarts)));
    if (workers == 1) {
        for (std::int64_t k = 0; k < restarts; ++k)
            values[k] = outcome_value(run_restart(A, seed, k, cfg.swap));
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::int64_t k = w; k < restarts; k += workers)
                    values[k] = outcome_value(run_restart(A, seed, k, cfg.swap));
            });
        }
        for (auto& t : pool) t.join();
    }

    std::int64_t best = 0;
    for (std::int64_t k = 1; k < restarts; ++k)
        if (values[k] > values[best]) best = k;

    AntisortOutcome chosen = run_restart(A, seed, best, cfg.swap);
    if (trace) {
        *trace = chosen.trace;
        trace->restarts_used = restarts;
    }

    const bool forced = A.m == 1 || A.d == 1;
    MixResult result = result_for_profile(
        Objective::beta, A, profile_between(A, chosen.matrix),
        forced ? Status::exact() : Status::heuristic_lower());
    if (result.value != values[best])
        throw std::logic_error("restart replay does not reproduce the best value");
    return result;
}

MixResult randomized_gamma(const Matrix& A, std::int64_t restarts, std::uint64_t seed,
                           const RestartConfig& cfg, SwapTrace* trace) {
    const auto [comp, l] = complement(A);
    const MixResult lower = randomized_beta(comp, restarts, seed, cfg, trace);

    const bool forced = A.m == 1 || A.d == 1;
    MixResult result = result_for_profile(
        Objective::gamma, A, lower.profile,
        forced ? Status::exact() : Status::heuristic_upper());
    if (result.value != beta_from_gamma(lower.value, A.d, l))
        throw std::logic_error("complement witness does not transfer");
    return result;
}

double distinct_rowsum_frequency(int m, int d, std::int64_t max_value, int samples,
                                 std::uint64_t seed) {
    if (m < 1 || d < 1 || max_value < 1 || samples < 1)
        throw std::invalid_argument("all frequency parameters must be positive");
    int hits = 0;
    for (int s = 0; s < samples; ++s) {
        auto rng = derive_stream(seed, static_cast<std::uint64_t>(s));
        std::vector<std::int64_t> sums(m, 0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < d; ++j)
                sums[i] += 1 + static_cast<std::int64_t>(
                                   uniform_index(rng, static_cast<std::size_t>(max_value)));
        std::sort(sums.begin(), sums.end());
        if (std::adjacent_find(sums.begin(), sums.end()) == sums.end()) ++hits;
    }
    return static_cast<double>(hits) / samples;
}

} // namespace rowmix
