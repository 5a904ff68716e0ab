#include "rowmix/matrix.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "rowmix/checked.hpp"

namespace rowmix {

Matrix::Matrix(int rows, int cols, std::int64_t fill) : m(rows), d(cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("matrix needs at least one row and one column");
    entries.assign(static_cast<std::size_t>(rows) * cols, fill);
}

Matrix Matrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    if (rows.empty() || rows[0].empty())
        throw std::invalid_argument("matrix needs at least one row and one column");
    Matrix A(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < A.m; ++i) {
        if (static_cast<int>(rows[i].size()) != A.d)
            throw std::invalid_argument("ragged rows in matrix literal");
        for (int j = 0; j < A.d; ++j) A.at(i, j) = rows[i][j];
    }
    return A;
}

PermutationProfile PermutationProfile::identity(int m, int d) {
    PermutationProfile p;
    p.perms.assign(d, std::vector<int>(m));
    for (auto& perm : p.perms) std::iota(perm.begin(), perm.end(), 0);
    return p;
}

bool is_permutation(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

std::vector<int> inverse_permutation(const std::vector<int>& p) {
    std::vector<int> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
    return inv;
}

Matrix apply_profile(const Matrix& A, const PermutationProfile& profile) {
    if (static_cast<int>(profile.perms.size()) != A.d)
        throw std::invalid_argument("profile has wrong number of columns");
    Matrix out(A.m, A.d);
    out.scale = A.scale;
    out.shift = A.shift;
    for (int j = 0; j < A.d; ++j) {
        const auto& p = profile.perms[j];
        if (static_cast<int>(p.size()) != A.m || !is_permutation(p))
            throw std::invalid_argument("profile column is not a permutation of the rows");
        for (int i = 0; i < A.m; ++i) out.at(p[i], j) = A.at(i, j);
    }
    return out;
}

std::vector<std::int64_t> row_sums(const Matrix& A) {
    std::vector<std::int64_t> sums(A.m, 0);
    for (int i = 0; i < A.m; ++i)
        for (int j = 0; j < A.d; ++j) sums[i] = checked_add(sums[i], A.at(i, j));
    return sums;
}

std::int64_t grand_total(const Matrix& A) {
    std::int64_t total = 0;
    for (std::int64_t v : A.entries) total = checked_add(total, v);
    return total;
}

std::optional<std::int64_t> target_row_sum(const Matrix& A) {
    const std::int64_t total = grand_total(A);
    if (total % A.m != 0) return std::nullopt;
    return total / A.m;
}

std::pair<Matrix, std::int64_t> complement(const Matrix& A) {
    const std::int64_t l = *std::max_element(A.entries.begin(), A.entries.end());
    Matrix out(A.m, A.d);
    out.scale = A.scale;
    for (std::size_t k = 0; k < A.entries.size(); ++k)
        out.entries[k] = checked_sub(l, A.entries[k]);
    return {out, l};
}

std::int64_t beta_from_gamma(std::int64_t gamma_of_complement, int d, std::int64_t l) {
    return checked_sub(checked_mul(static_cast<std::int64_t>(d), l), gamma_of_complement);
}

bool oppositely_ordered(const std::vector<std::int64_t>& x,
                        const std::vector<std::int64_t>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("oppositely_ordered needs equal lengths");
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] > y[b];
    });
    for (std::size_t k = 1; k < idx.size(); ++k)
        if (y[idx[k - 1]] < y[idx[k]]) return false;
    return true;
}

Matrix drop_column(const Matrix& A, int j) {
    if (A.d < 2) throw std::invalid_argument("cannot drop the only column");
    if (j < 0 || j >= A.d) throw std::invalid_argument("column index out of range");
    Matrix out(A.m, A.d - 1);
    out.scale = A.scale;
    out.shift = A.shift;
    for (int i = 0; i < A.m; ++i) {
        int c = 0;
        for (int k = 0; k < A.d; ++k)
            if (k != j) out.at(i, c++) = A.at(i, k);
    }
    return out;
}

std::pair<Matrix, std::int64_t> shift_normalize(const Matrix& A) {
    const std::int64_t lo = *std::min_element(A.entries.begin(), A.entries.end());
    const std::int64_t mu = checked_sub(0, lo);
    Matrix out = A;
    for (auto& v : out.entries) v = checked_add(v, mu);
    out.shift = checked_add(out.shift, mu);
    return {out, mu};
}

PermutationProfile profile_between(const Matrix& A, const Matrix& B) {
    if (A.m != B.m || A.d != B.d)
        throw std::invalid_argument("profile_between needs equal shapes");
    PermutationProfile profile;
    profile.perms.resize(A.d);
    for (int j = 0; j < A.d; ++j) {
        std::map<std::int64_t, std::vector<int>> positions;
        for (int i = A.m - 1; i >= 0; --i) positions[B.at(i, j)].push_back(i);
        auto& perm = profile.perms[j];
        perm.resize(A.m);
        for (int i = 0; i < A.m; ++i) {
            auto& bucket = positions[A.at(i, j)];
            if (bucket.empty())
                throw std::invalid_argument("columns are not rearrangements of each other");
            perm[i] = bucket.back();
            bucket.pop_back();
        }
    }
    return profile;
}

MixResult result_for_profile(Objective objective, const Matrix& A,
                             PermutationProfile profile, Status status) {
    MixResult r;
    r.objective = objective;
    r.status = status;
    r.row_sums = row_sums(apply_profile(A, profile));
    r.profile = std::move(profile);
    r.value = objective == Objective::beta
                  ? *std::min_element(r.row_sums.begin(), r.row_sums.end())
                  : *std::max_element(r.row_sums.begin(), r.row_sums.end());
    return r;
}

} // namespace rowmix
