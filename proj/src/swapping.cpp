#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "rowmix/checked.hpp"
#include "rowmix/errors.hpp"
#include "rowmix/swapping.hpp"

namespace rowmix {

namespace {

std::vector<std::int64_t> remainder_sums(const Matrix& A, int j,
                                         const std::vector<std::int64_t>& total) {
    std::vector<std::int64_t> rest(A.m);
    for (int i = 0; i < A.m; ++i) rest[i] = checked_sub(total[i], A.at(i, j));
    return rest;
}

std::vector<std::int64_t> column_values(const Matrix& A, int j) {
    std::vector<std::int64_t> col(A.m);
    for (int i = 0; i < A.m; ++i) col[i] = A.at(i, j);
    return col;
}

std::int64_t min_row_sum(const Matrix& A) {
    const auto sums = row_sums(A);
    return *std::min_element(sums.begin(), sums.end());
}

// rows sorted lexicographically; equal up to a row permutation means equal here
std::vector<std::int64_t> canonical_rows(const Matrix& A) {
    std::vector<std::vector<std::int64_t>> rows(A.m, std::vector<std::int64_t>(A.d));
    for (int i = 0; i < A.m; ++i)
        for (int j = 0; j < A.d; ++j) rows[i][j] = A.at(i, j);
    std::sort(rows.begin(), rows.end());
    std::vector<std::int64_t> flat;
    flat.reserve(A.entries.size());
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return flat;
}

// one offending pair instead of a full re-sort; picks the pair whose row sums
// are smallest, then lowest indices
Matrix single_swap_step(const Matrix& A, int j, int& row_a, int& row_b) {
    const auto total = row_sums(A);
    const auto rest = remainder_sums(A, j, total);
    const auto col = column_values(A, j);

    int best_a = -1, best_b = -1;
    for (int a = 0; a < A.m; ++a) {
        for (int b = 0; b < A.m; ++b) {
            if (rest[a] < rest[b] && col[a] < col[b]) {
                if (best_a < 0 ||
                    std::tuple(total[a], total[b], a, b) <
                        std::tuple(total[best_a], total[best_b], best_a, best_b)) {
                    best_a = a;
                    best_b = b;
                }
            }
        }
    }
    if (best_a < 0) throw std::invalid_argument("column already oppositely ordered");

    Matrix out = A;
    std::swap(out.at(best_a, j), out.at(best_b, j));
    if (min_row_sum(out) < min_row_sum(A))
        throw std::logic_error("pair swap decreased the min row sum");
    row_a = best_a;
    row_b = best_b;
    return out;
}

} // namespace

std::optional<int> find_violating_column(const Matrix& A) {
    if (A.d < 2) throw std::invalid_argument("needs at least two columns");
    const auto total = row_sums(A);
    for (int j = 0; j < A.d; ++j)
        if (!oppositely_ordered(remainder_sums(A, j, total), column_values(A, j)))
            return j;
    return std::nullopt;
}

Matrix swap_step(const Matrix& A, int j) {
    if (A.d < 2) throw std::invalid_argument("needs at least two columns");
    if (j < 0 || j >= A.d) throw std::invalid_argument("column index out of range");
    const auto total = row_sums(A);
    const auto rest = remainder_sums(A, j, total);
    auto values = column_values(A, j);
    if (oppositely_ordered(rest, values))
        throw std::invalid_argument("column already oppositely ordered");

    std::vector<int> order(A.m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (rest[a] != rest[b]) return rest[a] < rest[b];
        return a < b;
    });
    std::sort(values.begin(), values.end(), std::greater<>());

    Matrix out = A;
    for (int k = 0; k < A.m; ++k) out.at(order[k], j) = values[k];
    if (min_row_sum(out) < min_row_sum(A))
        throw std::logic_error("column re-sort decreased the min row sum");
    return out;
}

AntisortOutcome antisort_columns(const Matrix& A, const SwapConfig& cfg) {
    AntisortOutcome out;
    out.matrix = A;
    out.trace.restarts_used = 1;
    out.trace.min_row_sum_history.push_back(min_row_sum(A));
    if (A.d < 2) {
        out.converged = true;
        return out;
    }

    const std::int64_t budget =
        cfg.step_budget > 0 ? cfg.step_budget
                            : 100 * static_cast<std::int64_t>(A.m) * A.d;
    std::set<std::vector<std::int64_t>> seen;
    seen.insert(canonical_rows(out.matrix));

    for (std::int64_t step = 0; step < budget; ++step) {
        const auto j = find_violating_column(out.matrix);
        if (!j) {
            out.converged = true;
            return out;
        }
        SwapStep record;
        record.column = *j;
        if (cfg.single_transposition)
            out.matrix = single_swap_step(out.matrix, *j, record.row_a, record.row_b);
        else
            out.matrix = swap_step(out.matrix, *j);
        out.trace.steps.push_back(record);

        const std::int64_t now = min_row_sum(out.matrix);
        if (now < out.trace.min_row_sum_history.back())
            throw std::logic_error("min row sum decreased across a swap step");
        out.trace.min_row_sum_history.push_back(now);

        if (!seen.insert(canonical_rows(out.matrix)).second) return out;  // cycle
    }
    return out;  // budget exhausted
}

bool distinct_rowsum_diagnostic(const Matrix& A, const DiagnosticConfig& cfg) {
    for (int j = 0; j < A.d; ++j) {
        std::set<std::int64_t> seen;
        for (int i = 0; i < A.m; ++i) seen.insert(A.at(i, j));
        if (static_cast<int>(seen.size()) != A.m) return false;
    }
    if (A.d < 2) {
        // zero-column submatrix: all row sums are 0
        return A.m == 1;
    }

    // arrangements of a (d-1)-column submatrix, first submatrix column pinned
    // (a shared row permutation cannot create or remove duplicates)
    constexpr std::int64_t cap = INT64_MAX / 4;
    const auto sat_mul = [](std::int64_t a, std::int64_t b) {
        return a > cap / b ? cap : a * b;
    };
    std::int64_t fact = 1;
    for (int k = 2; k <= A.m; ++k) fact = sat_mul(fact, k);
    std::int64_t checks = A.d;
    for (int j = 0; j + 2 < A.d; ++j) checks = sat_mul(checks, fact);
    if (checks > std::min(cfg.max_checks, cap - 1))
        throw BudgetExceeded("distinct row sum diagnostic over " +
                             std::to_string(cfg.max_checks) + " arrangements");

    for (int dropped = 0; dropped < A.d; ++dropped) {
        const Matrix sub = drop_column(A, dropped);
        std::vector<std::vector<int>> free_cols(sub.d - 1);
        for (auto& p : free_cols) {
            p.resize(A.m);
            std::iota(p.begin(), p.end(), 0);
        }
        std::vector<std::int64_t> sums(A.m);
        while (true) {
            for (int i = 0; i < A.m; ++i) sums[i] = sub.at(i, 0);
            for (int j = 1; j < sub.d; ++j)
                for (int i = 0; i < A.m; ++i) sums[free_cols[j - 1][i]] += sub.at(i, j);
            std::vector<std::int64_t> sorted = sums;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                return false;
            int j = sub.d - 2;
            while (j >= 0 && !std::next_permutation(free_cols[j].begin(), free_cols[j].end()))
                --j;
            if (j < 0) break;
        }
    }
    return true;
}

} // namespace rowmix
