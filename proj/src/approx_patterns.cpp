#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rowmix/approx.hpp"
#include "rowmix/checked.hpp"
#include "rowmix/errors.hpp"
#include "rowmix/matrix.hpp"

namespace rowmix {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    const std::int64_t q = a / b;
    return q + ((a % b != 0 && (a % b > 0) == (b > 0)) ? 1 : 0);
}

std::vector<std::int64_t> sorted_column(const Matrix& A, int j) {
    std::vector<std::int64_t> col(A.m);
    for (int i = 0; i < A.m; ++i) col[i] = A.at(i, j);
    std::sort(col.begin(), col.end());
    return col;
}

} // namespace

MixResult same_multiset_gamma(const Matrix& A, const SameMultisetConfig& cfg) {
    const auto base = sorted_column(A, 0);
    for (int j = 1; j < A.d; ++j)
        if (sorted_column(A, j) != base)
            throw std::invalid_argument("columns do not share one value multiset");

    std::vector<std::vector<std::int64_t>> arr;
    {
        auto v = base;
        do {
            if (static_cast<std::int64_t>(arr.size()) == cfg.max_arrangements)
                throw BudgetExceeded("more than " + std::to_string(cfg.max_arrangements) +
                                     " distinct column orderings; raise the budget");
            arr.push_back(v);
        } while (std::next_permutation(v.begin(), v.end()));
    }
    const int k = static_cast<int>(arr.size());

    const std::int64_t multiset_total = std::accumulate(base.begin(), base.end(), std::int64_t{0});
    const std::int64_t floor_bound = ceil_div(checked_mul(A.d, multiset_total), A.m);
    const std::int64_t v_min = base.front();

    std::int64_t best = INT64_MAX;
    std::vector<int> counts(k, 0), best_counts;
    std::vector<std::int64_t> sums(A.m, 0);
    std::int64_t nodes = 0;

    std::function<void(int, int)> search = [&](int l, int remaining) {
        if (++nodes > cfg.max_nodes)
            throw BudgetExceeded("count search exceeded " + std::to_string(cfg.max_nodes) +
                                 " nodes; raise the budget");
        if (remaining == 0) {
            const std::int64_t val = *std::max_element(sums.begin(), sums.end());
            if (val < best) {
                best = val;
                best_counts = counts;
            }
            return;
        }
        if (l == k) return;
        const std::int64_t reached = *std::max_element(sums.begin(), sums.end());
        if (std::max(floor_bound, reached + remaining * v_min) >= best) return;
        for (int x = remaining; x >= 0; --x) {
            counts[l] = x;
            for (int i = 0; i < A.m; ++i) sums[i] += x * arr[l][i];
            search(l + 1, remaining - x);
            for (int i = 0; i < A.m; ++i) sums[i] -= x * arr[l][i];
            counts[l] = 0;
        }
    };
    search(0, A.d);
    if (best == INT64_MAX) throw std::logic_error("count search missed every composition");

    Matrix target(A.m, A.d);
    int col = 0;
    for (int l = 0; l < k; ++l)
        for (int rep = 0; rep < best_counts[l]; ++rep, ++col)
            for (int i = 0; i < A.m; ++i) target.at(i, col) = arr[l][i];

    auto out = result_for_profile(Objective::gamma, A, profile_between(A, target),
                                  Status::exact());
    if (out.value != best) throw std::logic_error("witness does not reach the best count value");
    return out;
}

namespace {

// patterns over the values present per column, with per-column counts to meet
struct PatternUniverse {
    std::vector<std::vector<std::int64_t>> col_vals;  // sorted distinct, per column
    std::vector<std::vector<int>> need_template;      // occurrences per (column, value)
    std::vector<std::vector<int>> pat;                // per pattern: value index per column
    std::vector<std::int64_t> sums;
};

PatternUniverse build_universe(const Matrix& A, std::int64_t max_patterns) {
    PatternUniverse u;
    u.col_vals.resize(A.d);
    u.need_template.resize(A.d);
    for (int j = 0; j < A.d; ++j) {
        auto col = sorted_column(A, j);
        for (std::int64_t v : col) {
            if (u.col_vals[j].empty() || u.col_vals[j].back() != v) {
                u.col_vals[j].push_back(v);
                u.need_template[j].push_back(1);
            } else {
                ++u.need_template[j].back();
            }
        }
    }

    std::vector<int> pick(A.d, 0);
    while (true) {
        if (static_cast<std::int64_t>(u.pat.size()) == max_patterns)
            throw BudgetExceeded("more than " + std::to_string(max_patterns) +
                                 " row patterns; raise the budget");
        u.pat.push_back(pick);
        std::int64_t s = 0;
        for (int j = 0; j < A.d; ++j) s = checked_add(s, u.col_vals[j][pick[j]]);
        u.sums.push_back(s);
        int j = A.d - 1;
        while (j >= 0 && ++pick[j] == static_cast<int>(u.col_vals[j].size())) pick[j--] = 0;
        if (j < 0) break;
    }
    return u;
}

struct Probe {
    bool ok = false;
    std::vector<int> kept;    // pattern indices with sum <= cap, in order
    std::vector<int> counts;  // rows assembled from each kept pattern
};

Probe probe_cap(const PatternUniverse& u, const Matrix& A, std::int64_t cap,
                std::int64_t max_nodes, std::int64_t& nodes) {
    Probe probe;
    for (int k = 0; k < static_cast<int>(u.pat.size()); ++k)
        if (u.sums[k] <= cap) probe.kept.push_back(k);
    probe.counts.assign(probe.kept.size(), 0);

    // last chance to supply each (column, value); -1 when no kept pattern can
    std::vector<std::vector<int>> last(A.d);
    for (int j = 0; j < A.d; ++j) last[j].assign(u.col_vals[j].size(), -1);
    for (int pos = 0; pos < static_cast<int>(probe.kept.size()); ++pos)
        for (int j = 0; j < A.d; ++j) last[j][u.pat[probe.kept[pos]][j]] = pos;

    auto need = u.need_template;
    std::function<bool(int, int)> assemble = [&](int pos, int rows_left) -> bool {
        if (++nodes > max_nodes)
            throw BudgetExceeded("feasibility search exceeded " + std::to_string(max_nodes) +
                                 " nodes; raise the budget");
        if (rows_left == 0) return true;
        if (pos == static_cast<int>(probe.kept.size())) return false;
        for (int j = 0; j < A.d; ++j)
            for (int v = 0; v < static_cast<int>(need[j].size()); ++v)
                if (need[j][v] > 0 && last[j][v] < pos) return false;
        const auto& row = u.pat[probe.kept[pos]];
        int most = rows_left;
        for (int j = 0; j < A.d; ++j) most = std::min(most, need[j][row[j]]);
        for (int q = most; q >= 0; --q) {
            for (int j = 0; j < A.d; ++j) need[j][row[j]] -= q;
            probe.counts[pos] = q;
            if (assemble(pos + 1, rows_left - q)) return true;
            for (int j = 0; j < A.d; ++j) need[j][row[j]] += q;
            probe.counts[pos] = 0;
        }
        return false;
    };
    probe.ok = assemble(0, A.m);
    return probe;
}

} // namespace

MixResult fixed_valueset_gamma(const Matrix& A, const std::vector<std::int64_t>& values,
                               const FixedValuesetConfig& cfg) {
    if (values.empty()) throw std::invalid_argument("value set is empty");
    auto allowed = values;
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    for (std::int64_t v : A.entries)
        if (!std::binary_search(allowed.begin(), allowed.end(), v))
            throw std::invalid_argument("entry " + std::to_string(v) +
                                        " is outside the declared value set");

    const auto universe = build_universe(A, cfg.max_patterns);
    auto caps = universe.sums;
    std::sort(caps.begin(), caps.end());
    caps.erase(std::unique(caps.begin(), caps.end()), caps.end());

    std::int64_t nodes = 0;
    std::size_t lo = 0, hi = caps.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (probe_cap(universe, A, caps[mid], cfg.max_nodes, nodes).ok)
            hi = mid;
        else
            lo = mid + 1;
    }
    const auto witness = probe_cap(universe, A, caps[lo], cfg.max_nodes, nodes);
    if (!witness.ok)
        throw std::logic_error("the matrix itself witnesses the largest pattern sum");

    Matrix target(A.m, A.d);
    int row = 0;
    for (int pos = 0; pos < static_cast<int>(witness.kept.size()); ++pos)
        for (int rep = 0; rep < witness.counts[pos]; ++rep, ++row)
            for (int j = 0; j < A.d; ++j)
                target.at(row, j) = universe.col_vals[j][universe.pat[witness.kept[pos]][j]];

    auto out = result_for_profile(Objective::gamma, A, profile_between(A, target),
                                  Status::exact());
    if (out.value != caps[lo])
        throw std::logic_error("witness does not reach the smallest feasible cap");
    return out;
}

MixResult ptas_gamma(const Matrix& A, const Rational& eps, const FixedValuesetConfig& cfg) {
    if (!(Rational(0) < eps)) throw std::invalid_argument("needs a positive epsilon");

    const bool had_negative =
        *std::min_element(A.entries.begin(), A.entries.end()) < 0;
    const auto [S, mu] = shift_normalize(A);
    (void)mu;
    const std::int64_t peak = *std::max_element(S.entries.begin(), S.entries.end());

    const Status status = Status::ratio_bound(Rational(1) + eps);
    MixResult out;
    if (peak == 0) {
        // constant matrix: every arrangement gives the same row sums
        out = result_for_profile(Objective::gamma, A, PermutationProfile::identity(A.m, A.d),
                                 status);
    } else {
        // entry -> smallest grid level at or above it, grid width eps*peak/d
        Matrix rounded(A.m, A.d);
        const std::int64_t denom = checked_mul(eps.num, peak);
        for (std::size_t e = 0; e < S.entries.size(); ++e) {
            const std::int64_t scaled = checked_mul(checked_mul(S.entries[e], A.d), eps.den);
            rounded.entries[e] = ceil_div(scaled, denom);
        }
        auto levels = rounded.entries;
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

        const auto inner = fixed_valueset_gamma(rounded, levels, cfg);
        out = result_for_profile(Objective::gamma, A, inner.profile, status);

        const Rational width = eps * Rational(peak, A.d);
        out.note = "entries rounded up to multiples of " + format_rational(width);
    }
    if (had_negative) {
        if (!out.note.empty()) out.note += "; ";
        out.note += "entries were shifted to nonnegative; the ratio bound applies to "
                    "the shifted instance";
    }
    return out;
}

} // namespace rowmix
