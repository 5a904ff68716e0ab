#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "rowmix/checked.hpp"
#include "rowmix/exact.hpp"

namespace rowmix {

namespace {

struct BalanceOutcome {
    PermutationProfile profile;
    DefectLedger ledger;
    std::int64_t swaps = 0;
};

DefectLedger make_ledger(std::int64_t target, const std::vector<std::int64_t>& sums) {
    DefectLedger ledger;
    ledger.target = target;
    ledger.defects.reserve(sums.size());
    for (std::int64_t s : sums) {
        const std::int64_t d = checked_sub(target, s);
        ledger.defects.push_back(d);
        ledger.total_defect = checked_add(ledger.total_defect, d < 0 ? -d : d);
    }
    return ledger;
}

// Pushes every row sum of a 0/1 matrix toward `target` by swapping column
// entries between a row that wants a one and a row that has one to spare.
// Column 0 is never touched; any leftover imbalance would need two disagreeing
// columns, and at most one of those can be column 0.
BalanceOutcome defect_balance(const Matrix& bits, std::int64_t target) {
    std::vector<std::int64_t> work = bits.entries;
    const auto at = [&](int i, int j) -> std::int64_t& {
        return work[static_cast<std::size_t>(i) * bits.d + j];
    };
    // source[j][i] = row of bits whose entry currently sits at (i, j)
    std::vector<std::vector<int>> source(bits.d, std::vector<int>(bits.m));
    for (auto& s : source) std::iota(s.begin(), s.end(), 0);

    std::vector<std::int64_t> sums(bits.m, 0);
    for (int i = 0; i < bits.m; ++i)
        for (int j = 0; j < bits.d; ++j) sums[i] += at(i, j);
    std::vector<std::int64_t> defect(bits.m);
    std::int64_t phi = 0;
    for (int i = 0; i < bits.m; ++i) {
        defect[i] = target - sums[i];
        phi += defect[i] < 0 ? -defect[i] : defect[i];
    }

    std::int64_t swaps = 0;
    for (int j = 1; j < bits.d; ++j) {
        std::vector<int> wanting, sparing;
        for (int i = 0; i < bits.m; ++i) {
            if (defect[i] > 0 && at(i, j) == 0) wanting.push_back(i);
            if (defect[i] < 0 && at(i, j) == 1) sparing.push_back(i);
        }
        std::sort(wanting.begin(), wanting.end(), [&](int a, int b) {
            if (defect[a] != defect[b]) return defect[a] > defect[b];
            return a < b;
        });
        std::sort(sparing.begin(), sparing.end(), [&](int a, int b) {
            if (defect[a] != defect[b]) return defect[a] < defect[b];
            return a < b;
        });
        const std::size_t t = std::min(wanting.size(), sparing.size());
        for (std::size_t k = 0; k < t; ++k) {
            const int w = wanting[k], s = sparing[k];
            std::swap(at(w, j), at(s, j));
            std::swap(source[j][w], source[j][s]);
            --defect[w];
            ++defect[s];
            ++swaps;
        }
        if (t > 0) {
            std::int64_t now = 0;
            for (std::int64_t d : defect) now += d < 0 ? -d : d;
            if (now != phi - 2 * static_cast<std::int64_t>(t))
                throw std::logic_error("defect swap batch did not shrink the imbalance");
            phi = now;
        }
    }

    BalanceOutcome out;
    out.swaps = swaps;
    out.profile.perms.reserve(bits.d);
    for (const auto& s : source) out.profile.perms.push_back(inverse_permutation(s));
    std::vector<std::int64_t> final_sums(bits.m);
    for (int i = 0; i < bits.m; ++i) final_sums[i] = target - defect[i];
    out.ledger = make_ledger(target, final_sums);
    return out;
}

} // namespace

ZeroOneOutcome zero_one_mixability(const Matrix& A) {
    for (std::int64_t v : A.entries)
        if (v != 0 && v != 1) throw std::invalid_argument("entry outside {0,1}");

    ZeroOneOutcome out;
    out.total = grand_total(A);
    if (out.total % A.m != 0) return out;

    BalanceOutcome bal = defect_balance(A, out.total / A.m);
    if (bal.ledger.total_defect != 0)
        throw std::logic_error("balancing ended with nonzero defect despite divisibility");
    out.swaps = bal.swaps;
    out.ledger = bal.ledger;
    out.mix = result_for_profile(Objective::mixability, A, std::move(bal.profile),
                                 Status::exact());
    return out;
}

MixResult two_value_gamma(const Matrix& A) {
    std::set<std::int64_t> values(A.entries.begin(), A.entries.end());
    if (values.size() > 2) throw std::invalid_argument("more than two distinct values");
    if (values.size() == 1)
        return result_for_profile(Objective::gamma, A,
                                  PermutationProfile::identity(A.m, A.d), Status::exact());

    const std::int64_t a = *values.begin();
    const std::int64_t b = *values.rbegin();
    Matrix bits(A.m, A.d);
    for (std::size_t k = 0; k < A.entries.size(); ++k)
        bits.entries[k] = A.entries[k] == b ? 1 : 0;

    const std::int64_t ones = grand_total(bits);
    const std::int64_t target = (ones + A.m - 1) / A.m;
    BalanceOutcome bal = defect_balance(bits, target);
    // everything at or below target, and at least one row on it
    std::int64_t least = INT64_MAX;
    for (std::int64_t d : bal.ledger.defects) {
        if (d < 0) throw std::logic_error("row exceeds the balanced ones target");
        least = std::min(least, d);
    }
    if (least != 0) throw std::logic_error("no row reaches the balanced ones target");

    MixResult result = result_for_profile(Objective::gamma, A, std::move(bal.profile),
                                          Status::exact());
    const std::int64_t expected = checked_add(
        checked_mul(static_cast<std::int64_t>(A.d), a),
        checked_mul(checked_sub(b, a), target));
    if (result.value != expected) throw std::logic_error("two-value gamma mismatch");
    return result;
}

} // namespace rowmix
