#include <algorithm>
#include <stdexcept>

#include "rowmix/approx.hpp"
#include "rowmix/checked.hpp"
#include "rowmix/matrix.hpp"

namespace rowmix {

namespace {

// Kuhn's augmenting path search over edges with cost <= cap.
bool augment(int row, const std::vector<std::vector<std::int64_t>>& cost, std::int64_t cap,
             std::vector<char>& visited, std::vector<int>& owner) {
    const int n = static_cast<int>(cost.size());
    for (int col = 0; col < n; ++col) {
        if (visited[col] || cost[row][col] > cap) continue;
        visited[col] = 1;
        if (owner[col] < 0 || augment(owner[col], cost, cap, visited, owner)) {
            owner[col] = row;
            return true;
        }
    }
    return false;
}

bool matchable(const std::vector<std::vector<std::int64_t>>& cost, std::int64_t cap,
               std::vector<int>& owner) {
    const int n = static_cast<int>(cost.size());
    owner.assign(n, -1);
    std::vector<char> visited(n);
    for (int row = 0; row < n; ++row) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!augment(row, cost, cap, visited, owner)) return false;
    }
    return true;
}

struct OrderColumns {
    int first, second, third;
};

OrderColumns columns_of(PairOrder order) {
    switch (order) {
        case PairOrder::rg_then_b: return {0, 1, 2};
        case PairOrder::rb_then_g: return {0, 2, 1};
        case PairOrder::gb_then_r: return {1, 2, 0};
    }
    throw std::invalid_argument("unknown pairing order");
}

} // namespace

BottleneckMatching bottleneck_assignment_2d(const std::vector<std::vector<std::int64_t>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) throw std::invalid_argument("cost table is empty");
    for (const auto& row : cost)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("cost table is not square");

    std::vector<std::int64_t> caps;
    caps.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : cost) caps.insert(caps.end(), row.begin(), row.end());
    std::sort(caps.begin(), caps.end());
    caps.erase(std::unique(caps.begin(), caps.end()), caps.end());

    // smallest cap admitting a perfect matching; the full table always does
    std::vector<int> owner;
    std::size_t lo = 0, hi = caps.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (matchable(cost, caps[mid], owner))
            hi = mid;
        else
            lo = mid + 1;
    }
    if (!matchable(cost, caps[lo], owner))
        throw std::logic_error("matching must exist at the largest cost");

    BottleneckMatching out;
    out.value = caps[lo];
    out.match.assign(n, -1);
    for (int col = 0; col < n; ++col) out.match[owner[col]] = col;
    return out;
}

TripartiteDistance TripartiteDistance::from_matrix(const Matrix& A) {
    if (A.d != 3) throw std::invalid_argument("needs exactly three columns");
    for (std::int64_t v : A.entries)
        if (v < 0) throw std::invalid_argument("needs nonnegative entries");
    TripartiteDistance out;
    out.m = A.m;
    out.entry.resize(static_cast<std::size_t>(3) * A.m);
    for (int l = 0; l < 3 * A.m; ++l) out.entry[l] = A.at(l / 3, l % 3);
    return out;
}

std::int64_t TripartiteDistance::dist2(int i, int j) const {
    if (klass(i) == klass(j))
        throw std::invalid_argument("distance is only defined across classes");
    return checked_add(entry[i], entry[j]);
}

Rational TripartiteDistance::dist(int i, int j) const { return Rational(dist2(i, j), 2); }

std::int64_t TripartiteDistance::triple_cost(int i, int j, int k) const {
    if (klass(i) == klass(j) || klass(j) == klass(k) || klass(i) == klass(k))
        throw std::invalid_argument("triple cost needs one index per class");
    return checked_add(checked_add(entry[i], entry[j]), entry[k]);
}

MixResult two_approx_gamma_d3(const Matrix& A, const TwoApproxConfig& cfg) {
    if (A.d != 3) throw std::invalid_argument("needs exactly three columns");
    if (cfg.orders.empty()) throw std::invalid_argument("needs at least one pairing order");

    const bool had_negative =
        *std::min_element(A.entries.begin(), A.entries.end()) < 0;
    const auto [S, mu] = shift_normalize(A);
    (void)mu;

    std::optional<MixResult> best;
    for (const PairOrder order : cfg.orders) {
        const auto [c1, c2, c3] = columns_of(order);

        std::vector<std::vector<std::int64_t>> pair_cost(
            A.m, std::vector<std::int64_t>(A.m));
        for (int i = 0; i < A.m; ++i)
            for (int j = 0; j < A.m; ++j)
                pair_cost[i][j] = checked_add(S.at(i, c1), S.at(j, c2));
        const auto first = bottleneck_assignment_2d(pair_cost);

        std::vector<std::vector<std::int64_t>> triple(A.m, std::vector<std::int64_t>(A.m));
        for (int p = 0; p < A.m; ++p)
            for (int k = 0; k < A.m; ++k)
                triple[p][k] = checked_add(pair_cost[p][first.match[p]], S.at(k, c3));
        const auto second = bottleneck_assignment_2d(triple);

        PermutationProfile profile;
        profile.perms.resize(3);
        std::vector<int> ident(A.m);
        for (int i = 0; i < A.m; ++i) ident[i] = i;
        profile.perms[c1] = ident;
        profile.perms[c2] = inverse_permutation(first.match);
        profile.perms[c3] = inverse_permutation(second.match);

        auto r = result_for_profile(Objective::gamma, A, std::move(profile),
                                    Status::ratio_bound(Rational(2)));
        if (!best || r.value < best->value) best = std::move(r);
    }

    if (had_negative)
        best->note = "entries were shifted to nonnegative; the factor-2 bound "
                     "applies to the shifted instance";
    return *best;
}

} // namespace rowmix
