#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "rowmix/errors.hpp"
#include "rowmix/exact.hpp"
#include "rowmix/matrix.hpp"
#include "rowmix/rng.hpp"
#include "rowmix/varbounds.hpp"

using namespace rowmix;

namespace {

DiscreteMarginal uniform_marginal(int N) {
    return discretize_marginal([](int r) { return Rational(r); }, N);
}

DiscreteMarginal random_marginal(std::mt19937_64& rng, int N) {
    std::vector<Rational> q(N + 1);
    std::int64_t half_units = static_cast<std::int64_t>(uniform_index(rng, 5));
    for (int r = 0; r <= N; ++r) {
        half_units += static_cast<std::int64_t>(uniform_index(rng, 4));
        q[r] = Rational(half_units, 2);
    }
    return DiscreteMarginal::from_quantiles(std::move(q));
}

} // namespace

TEST_CASE("uniform and point-mass marginals discretize as expected") {
    const auto uni = uniform_marginal(6);
    CHECK(uni.N == 6);
    for (int r = 0; r <= 6; ++r) CHECK(uni.quantiles[r] == Rational(r));

    // the same grid from samples 0..N
    std::vector<Rational> samples;
    for (int v = 6; v >= 0; --v) samples.push_back(Rational(v));
    const auto emp = discretize_marginal(samples, 6);
    CHECK(emp.quantiles == uni.quantiles);

    const auto point = discretize_marginal([](int) { return Rational(7, 2); }, 4);
    for (const auto& q : point.quantiles) CHECK(q == Rational(7, 2));
    for (const std::int64_t x2 : {5, 6, 7, 8, 9})
        CHECK(point.underline(Rational(x2, 2)) == point.overline(Rational(x2, 2)));

    CHECK_THROWS_AS(discretize_marginal([](int r) { return Rational(-r); }, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(discretize_marginal(std::vector<Rational>{}, 3), std::invalid_argument);
    CHECK_THROWS_AS(discretize_marginal([](int r) { return Rational(r); }, 0),
                    std::invalid_argument);
}

TEST_CASE("step function views bracket each other by at most one step") {
    auto rng = derive_stream(41, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const int N = 1 + static_cast<int>(uniform_index(rng, 8));
        const auto marg = random_marginal(rng, N);

        std::vector<Rational> probes;
        for (const auto& q : marg.quantiles) {
            probes.push_back(q);
            probes.push_back(q - Rational(1, 3));
            probes.push_back(q + Rational(1, 3));
        }
        for (const auto& x : probes) {
            const Rational below = marg.underline(x);
            const Rational above = marg.overline(x);
            CHECK(above <= below);
            const Rational gap = below - above;
            CHECK((gap == Rational(0) || gap == Rational(1, N)));
        }
    }
}

TEST_CASE("stacked quantile grid reproduces the comonotone and countermonotone sums") {
    const int N = 5;
    const std::vector<DiscreteMarginal> pair{uniform_marginal(N), uniform_marginal(N)};
    const auto A = quantile_matrix(pair, 0, N);
    CHECK(A.m == N + 1);
    CHECK(A.d == 2);
    CHECK(A.scale == 1);
    const auto sums = row_sums(A);
    for (int r = 0; r <= N; ++r) CHECK(sums[r] == 2 * r);

    PermutationProfile reversed;
    reversed.perms.resize(2, std::vector<int>(N + 1));
    for (int i = 0; i <= N; ++i) {
        reversed.perms[0][i] = i;
        reversed.perms[1][i] = N - i;
    }
    for (const std::int64_t s : row_sums(apply_profile(A, reversed))) CHECK(s == N);
    CHECK(brute_force_beta(A).value == N);

    const auto top = quantile_matrix(pair, N, N);
    CHECK(top.m == 1);
    CHECK(top.entries == std::vector<std::int64_t>{N, N});
}

TEST_CASE("fractional quantiles land in the matrix scale") {
    const auto halves = DiscreteMarginal::from_quantiles({Rational(0), Rational(1, 2), Rational(1)});
    const auto quarters =
        DiscreteMarginal::from_quantiles({Rational(0), Rational(1, 4), Rational(1)});
    const auto A = quantile_matrix({halves, quarters}, 0, 2);
    CHECK(A.scale == 4);
    CHECK(A.entries == std::vector<std::int64_t>{0, 0, 2, 1, 4, 4});

    CHECK_THROWS_AS(quantile_matrix({halves, uniform_marginal(5)}, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(quantile_matrix({halves}, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(quantile_matrix({}, 0, 0), std::invalid_argument);
}

TEST_CASE("two uniform marginals give the hand-computed interval") {
    const int N = 5;
    const std::vector<DiscreteMarginal> pair{uniform_marginal(N), uniform_marginal(N)};
    // alpha = 1/5: upper rows 1..5 pair to constant sums, lower rows 0..1
    const auto r = var_bounds(pair, Rational(1, 5), N,
                              VarBoundConfig{{VarBoundSolver::Kind::brute}});
    CHECK(r.upper == Rational(N + 1));
    CHECK(r.lower == Rational(1));
    CHECK(r.lower <= r.upper);
    CHECK(r.upper_status.kind == StatusKind::exact);
    CHECK(r.lower_status.kind == StatusKind::exact);
    CHECK(r.solver == "brute");
    CHECK_FALSE(r.note.empty());
}

TEST_CASE("one-column bounds collapse to the side quantiles") {
    const auto marg = DiscreteMarginal::from_quantiles(
        {Rational(1), Rational(3), Rational(7), Rational(9)});
    const auto r = var_bounds({marg}, Rational(2, 5), 3,
                              VarBoundConfig{{VarBoundSolver::Kind::dp}});
    // alpha*N = 6/5: nearest grid rows are 2 above and 1 below
    CHECK(r.upper == Rational(7));
    CHECK(r.lower == Rational(3));

    const auto on_grid = var_bounds({marg}, Rational(1, 3), 3,
                                    VarBoundConfig{{VarBoundSolver::Kind::dp}});
    CHECK(on_grid.upper == Rational(3));  // boundary row feeds both sides
    CHECK(on_grid.lower == Rational(3));
}

TEST_CASE("solvers agree and the heuristic interval nests inside the exact one") {
    auto rng = derive_stream(42, 0);
    for (int trial = 0; trial < 25; ++trial) {
        const int N = 2 + static_cast<int>(uniform_index(rng, 5));
        const int d = 1 + static_cast<int>(uniform_index(rng, 3));
        std::vector<DiscreteMarginal> marginals;
        for (int j = 0; j < d; ++j) marginals.push_back(random_marginal(rng, N));
        const Rational alpha(1 + static_cast<std::int64_t>(uniform_index(rng, 9)), 10);

        const auto by_brute =
            var_bounds(marginals, alpha, N, VarBoundConfig{{VarBoundSolver::Kind::brute}});
        const auto by_dp =
            var_bounds(marginals, alpha, N, VarBoundConfig{{VarBoundSolver::Kind::dp}});
        CHECK(by_brute.upper == by_dp.upper);
        CHECK(by_brute.lower == by_dp.lower);
        CHECK(by_brute.lower <= by_brute.upper);

        VarBoundConfig swap_cfg{{VarBoundSolver::Kind::swapping, 4, 7}};
        const auto by_swap = var_bounds(marginals, alpha, N, swap_cfg);
        CHECK(by_swap.upper <= by_brute.upper);
        CHECK(by_swap.lower >= by_brute.lower);
        // degenerate tails (one row or one column) come back exact
        CHECK((by_swap.upper_status.kind == StatusKind::exact ||
               by_swap.upper_status.kind == StatusKind::heuristic_lower_bound));
        CHECK((by_swap.lower_status.kind == StatusKind::exact ||
               by_swap.lower_status.kind == StatusKind::heuristic_upper_bound));
        CHECK(by_swap.solver == "swapping(restarts=4, seed=7)");
    }
}

TEST_CASE("hand-made three-column instance crosses solvers") {
    const auto a = DiscreteMarginal::from_quantiles(
        {Rational(0), Rational(1), Rational(1), Rational(2), Rational(4), Rational(4), Rational(6)});
    const auto b = DiscreteMarginal::from_quantiles(
        {Rational(1), Rational(1), Rational(2), Rational(3), Rational(3), Rational(5), Rational(5)});
    const auto c = DiscreteMarginal::from_quantiles(
        {Rational(0), Rational(2), Rational(2), Rational(2), Rational(3), Rational(4), Rational(7)});
    const std::vector<DiscreteMarginal> marginals{a, b, c};

    const auto by_brute =
        var_bounds(marginals, Rational(1, 2), 6, VarBoundConfig{{VarBoundSolver::Kind::brute}});
    const auto by_dp =
        var_bounds(marginals, Rational(1, 2), 6, VarBoundConfig{{VarBoundSolver::Kind::dp}});
    CHECK(by_brute.upper == by_dp.upper);
    CHECK(by_brute.lower == by_dp.lower);
    CHECK(by_brute.lower <= by_brute.upper);

    VarBoundConfig swap_cfg{{VarBoundSolver::Kind::swapping, 6, 11}};
    const auto by_swap = var_bounds(marginals, Rational(1, 2), 6, swap_cfg);
    CHECK(by_swap.upper <= by_brute.upper);
    CHECK(by_swap.lower >= by_brute.lower);
    CHECK(by_swap.upper_status.kind == StatusKind::heuristic_lower_bound);
    CHECK(by_swap.lower_status.kind == StatusKind::heuristic_upper_bound);
}

TEST_CASE("degenerate alpha and flipped bands are rejected") {
    const std::vector<DiscreteMarginal> pair{uniform_marginal(2), uniform_marginal(2)};
    CHECK_THROWS_AS(var_bounds(pair, Rational(0), 2, {}), std::invalid_argument);
    CHECK_THROWS_AS(var_bounds(pair, Rational(1), 2, {}), std::invalid_argument);
    CHECK_THROWS_AS(var_bounds(pair, Rational(3, 2), 2, {}), std::invalid_argument);
    CHECK_THROWS_AS(var_bounds(pair, Rational(1, 2), 5, {}), std::invalid_argument);

    // restricting the upper side to the low band empties the tail
    VarBoundConfig clipped;
    clipped.upper_steps = StepRange::first_n;
    CHECK_THROWS_AS(var_bounds(pair, Rational(3, 4), 2, clipped), std::invalid_argument);
}
