#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rowmix/checked.hpp"
#include "rowmix/errors.hpp"
#include "rowmix/exact.hpp"

namespace rowmix {

namespace {

using SumVec = std::vector<std::int64_t>;

std::vector<std::int64_t> column_of(const Matrix& A, int j) {
    std::vector<std::int64_t> col(A.m);
    for (int i = 0; i < A.m; ++i) col[i] = A.at(i, j);
    return col;
}

// Distinct assignments of the multiset `values` to slots 0..m-1, emitted in
// lexicographic order of the assignment vector.
void for_each_arrangement(const std::vector<std::int64_t>& values,
                          const std::function<void(const SumVec&)>& emit) {
    std::vector<std::int64_t> distinct = values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> remaining(distinct.size());
    for (std::size_t v = 0; v < distinct.size(); ++v)
        remaining[v] = static_cast<int>(std::count(values.begin(), values.end(), distinct[v]));

    SumVec slot(values.size());
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == slot.size()) {
            emit(slot);
            return;
        }
        for (std::size_t v = 0; v < distinct.size(); ++v) {
            if (remaining[v] == 0) continue;
            --remaining[v];
            slot[k] = distinct[v];
            rec(k + 1);
            ++remaining[v];
        }
    };
    rec(0);
}

struct Level {
    std::vector<SumVec> states;  // canonical: sorted non-decreasing
    std::map<SumVec, int> index;
    // how each state was first reached: predecessor state and the values
    // placed on its sorted slots
    std::vector<std::pair<int, SumVec>> origin;

    int add(const SumVec& s, int pred, const SumVec& arr) {
        auto [it, fresh] = index.emplace(s, static_cast<int>(states.size()));
        if (fresh) {
            states.push_back(s);
            origin.emplace_back(pred, arr);
        }
        return it->second;
    }
};

Level first_level(const Matrix& A) {
    Level lv;
    SumVec col = column_of(A, 0);
    std::sort(col.begin(), col.end());
    lv.add(col, -1, col);
    return lv;
}

Level expand(const Level& prev, const std::vector<std::int64_t>& col,
             const DpConfig& cfg, std::int64_t& expansions) {
    Level next;
    for (int s = 0; s < static_cast<int>(prev.states.size()); ++s) {
        const SumVec& base = prev.states[s];
        for_each_arrangement(col, [&](const SumVec& arr) {
            if (++expansions > cfg.max_expansions)
                throw BudgetExceeded("dp transition budget of " +
                                     std::to_string(cfg.max_expansions) +
                                     " expansions exceeded");
            SumVec sums(base.size());
            for (std::size_t i = 0; i < sums.size(); ++i)
                sums[i] = checked_add(base[i], arr[i]);
            std::sort(sums.begin(), sums.end());
            next.add(sums, s, arr);
            if (static_cast<std::int64_t>(next.states.size()) > cfg.max_states)
                throw BudgetExceeded("dp state budget of " + std::to_string(cfg.max_states) +
                                     " states exceeded");
        });
    }
    return next;
}

// Sorted partial sums paired against the column sorted the other way: the
// cheapest completion for the max row sum.
std::int64_t countermonotone_max(const SumVec& state, const SumVec& col_desc) {
    std::int64_t worst = INT64_MIN;
    for (std::size_t i = 0; i < state.size(); ++i)
        worst = std::max(worst, checked_add(state[i], col_desc[i]));
    return worst;
}

} // namespace

MixResult dp_gamma(const Matrix& A, const DpConfig& cfg) {
    if (A.d == 1)
        return result_for_profile(Objective::gamma, A,
                                  PermutationProfile::identity(A.m, A.d), Status::exact());

    std::int64_t expansions = 0;
    std::vector<Level> levels;
    levels.push_back(first_level(A));
    for (int j = 1; j <= A.d - 2; ++j)
        levels.push_back(expand(levels.back(), column_of(A, j), cfg, expansions));

    SumVec last_desc = column_of(A, A.d - 1);
    std::sort(last_desc.begin(), last_desc.end(), std::greater<>());

    const Level& pen = levels.back();
    std::int64_t best = INT64_MAX;
    int best_state = -1;
    for (int s = 0; s < static_cast<int>(pen.states.size()); ++s) {
        const std::int64_t v = countermonotone_max(pen.states[s], last_desc);
        if (v < best) {
            best = v;
            best_state = s;
        }
    }

    // walk the origins back, then replay forward to get a concrete matrix
    std::vector<SumVec> arrangement(A.d);
    arrangement[A.d - 1] = last_desc;
    int state = best_state;
    for (int t = A.d - 2; t >= 0; --t) {
        arrangement[t] = levels[t].origin[state].second;
        state = levels[t].origin[state].first;
    }

    Matrix arranged(A.m, A.d);
    SumVec cur(A.m, 0);
    std::vector<int> order(A.m);  // order[k] = row currently at sorted slot k
    std::iota(order.begin(), order.end(), 0);
    for (int t = 0; t < A.d; ++t) {
        for (int k = 0; k < A.m; ++k) {
            arranged.at(order[k], t) = arrangement[t][k];
            cur[order[k]] = checked_add(cur[order[k]], arrangement[t][k]);
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return cur[a] < cur[b]; });
    }
    if (*std::max_element(cur.begin(), cur.end()) != best)
        throw std::logic_error("dp replay does not reproduce the optimum");

    MixResult result = result_for_profile(Objective::gamma, A,
                                          profile_between(A, arranged), Status::exact());
    if (result.value != best) throw std::logic_error("dp witness value mismatch");
    return result;
}

std::vector<DpState> dp_reachable(const Matrix& A, int columns_consumed, const DpConfig& cfg) {
    if (columns_consumed < 1 || columns_consumed > A.d)
        throw std::invalid_argument("columns_consumed out of range");
    std::int64_t expansions = 0;
    Level lv = first_level(A);
    for (int j = 1; j < columns_consumed; ++j)
        lv = expand(lv, column_of(A, j), cfg, expansions);
    std::vector<DpState> out;
    out.reserve(lv.states.size());
    for (const auto& s : lv.states) out.push_back({s, columns_consumed});
    return out;
}

} // namespace rowmix
