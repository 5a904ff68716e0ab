#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "rowmix/checked.hpp"
#include "rowmix/constructions.hpp"
#include "rowmix/errors.hpp"

namespace rowmix {

namespace {

std::int64_t constant_row_sum(const Matrix& A, const char* which) {
    const auto sums = row_sums(A);
    for (std::int64_t s : sums)
        if (s != sums[0])
            throw std::invalid_argument(std::string(which) + " must have constant row sums");
    return sums[0];
}

// same-width stacking: every pair of a row of A and a row of B is summed
// entrywise. Keeps the column count, multiplies the row counts.
Matrix stack_glue(const Matrix& A, const Matrix& B) {
    if (A.d != B.d) throw std::invalid_argument("stacked matrices need equal widths");
    Matrix C(static_cast<int>(checked_mul(A.m, B.m)), A.d);
    for (int i = 0; i < A.m; ++i)
        for (int t = 0; t < B.m; ++t)
            for (int j = 0; j < A.d; ++j)
                C.at(B.m * i + t, j) = checked_add(A.at(i, j), B.at(t, j));
    return C;
}

Matrix cyclic_base(int d) {
    Matrix base(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) base.at(i, j) = (i + j) % d + 1;
    return base;
}

Matrix scaled_cyclic(int d, std::int64_t factor) {
    Matrix B(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) B.at(i, j) = checked_mul(factor, (i + j) % d);
    return B;
}

} // namespace

Matrix glue(const Matrix& A, const Matrix& B) {
    const std::int64_t sa = constant_row_sum(A, "first operand");
    const std::int64_t sb = constant_row_sum(B, "second operand");

    const std::int64_t rows = checked_mul(A.m, B.m);
    const std::int64_t cols = checked_mul(A.d, B.d);
    if (rows > std::numeric_limits<int>::max() || cols > std::numeric_limits<int>::max())
        throw std::overflow_error("glued matrix dimensions are too large");
    Matrix C(static_cast<int>(rows), static_cast<int>(cols));
    for (int i = 0; i < A.m; ++i)
        for (int k = 0; k < B.m; ++k)
            for (int j = 0; j < A.d; ++j)
                for (int l = 0; l < B.d; ++l)
                    C.at(B.m * i + k, B.d * j + l) = checked_add(A.at(i, j), B.at(k, l));

    const std::int64_t expected =
        checked_add(checked_mul(static_cast<std::int64_t>(B.d), sa),
                    checked_mul(static_cast<std::int64_t>(A.d), sb));
    for (std::int64_t s : row_sums(C))
        if (s != expected) throw std::logic_error("glued row sums are not constant");
    return C;
}

Matrix consecutive_matrix(const ConsecutiveSpec& spec) {
    if (spec.N < 1 || spec.d < 1)
        throw std::invalid_argument("consecutive matrix needs N >= 1 and d >= 1");
    Matrix A(spec.N, spec.d);
    for (int i = 0; i < spec.N; ++i)
        for (int j = 0; j < spec.d; ++j) A.at(i, j) = i + 1;
    if (spec.profile) return apply_profile(A, *spec.profile);
    return A;
}

std::int64_t a_d_k(int d, int k) {
    if (d < 1 || k < 1) throw std::invalid_argument("a_d_k needs d >= 1 and k >= 1");
    const std::int64_t power = checked_pow(d, k);
    if (d % 2 == 0) return checked_mul(d / 2, checked_add(power, 1));
    return checked_mul(d, checked_add(power, 1) / 2);
}

std::pair<Matrix, PermutationProfile> mixable_consecutive_construction(
    int d, int k, std::int64_t max_rows) {
    if (d < 2 || k < 1)
        throw std::invalid_argument("construction needs d >= 2 and k >= 1");
    std::int64_t rows = d;
    if (rows > max_rows)
        throw BudgetExceeded("construction would have more than " +
                             std::to_string(max_rows) + " rows");
    for (int t = 1; t < k; ++t) {
        if (rows > max_rows / d)
            throw BudgetExceeded("construction would have more than " +
                                 std::to_string(max_rows) + " rows");
        rows *= d;
    }
    if (rows > std::numeric_limits<int>::max())
        throw std::overflow_error("construction dimensions are too large");

    Matrix M = cyclic_base(d);
    std::int64_t factor = d;
    for (int t = 1; t < k; ++t) {
        M = stack_glue(M, scaled_cyclic(d, factor));
        factor = checked_mul(factor, d);
    }

    const Matrix identity_ordered =
        consecutive_matrix({static_cast<int>(rows), d, std::nullopt});
    return {M, profile_between(identity_ordered, M)};
}

std::pair<std::int64_t, std::int64_t> consecutive_bounds(std::int64_t N, int d) {
    if (N < d) throw std::invalid_argument("needs N >= d");
    if (d < 2) {
        if (N == 1) return {1, 1};
        throw std::invalid_argument("bracket is defined for d >= 2");
    }
    int k_lo = 0;
    std::int64_t power = 1;
    while (checked_mul(power, d) <= N) {
        power = checked_mul(power, d);
        ++k_lo;
    }
    const int k_hi = power == N ? k_lo : k_lo + 1;
    return {a_d_k(d, k_lo), a_d_k(d, k_hi)};
}

Matrix adversarial_identity(int N) {
    if (N < 2) throw std::invalid_argument("needs N >= 2");
    return consecutive_matrix({N, 3, std::nullopt});
}

Matrix partition_instance(const std::vector<std::int64_t>& values) {
    if (values.empty()) throw std::invalid_argument("needs at least one value");
    Matrix A(2, static_cast<int>(values.size()));
    for (int j = 0; j < A.d; ++j) {
        A.at(0, j) = values[j];
        A.at(1, j) = 0;
    }
    return A;
}

Matrix n3dm_instance(const std::vector<std::int64_t>& a,
                     const std::vector<std::int64_t>& b,
                     const std::vector<std::int64_t>& c) {
    if (a.size() != b.size() || b.size() != c.size() || a.empty())
        throw std::invalid_argument("needs three equally long nonempty sequences");
    Matrix A(static_cast<int>(a.size()), 3);
    for (int i = 0; i < A.m; ++i) {
        A.at(i, 0) = a[i];
        A.at(i, 1) = b[i];
        A.at(i, 2) = c[i];
    }
    return A;
}

SeparatorInstance separator_column_instance(const Matrix& A, std::int64_t K,
                                            std::optional<std::int64_t> k_prime_override) {
    std::int64_t biggest = 0;
    for (std::int64_t v : A.entries) biggest = std::max(biggest, v < 0 ? -v : v);
    const std::int64_t floor_k =
        std::max(checked_mul(checked_mul(2, static_cast<std::int64_t>(A.d)), biggest), K);
    const std::int64_t k_prime =
        k_prime_override ? *k_prime_override : checked_add(floor_k, 1);

    SeparatorInstance out;
    out.k_prime = k_prime;
    out.matrix = Matrix(A.m, A.d + 1);
    out.matrix.scale = A.scale;
    out.matrix.shift = A.shift;
    for (int i = 0; i < A.m; ++i) {
        for (int j = 0; j < A.d; ++j) out.matrix.at(i, j) = A.at(i, j);
        out.matrix.at(i, A.d) = checked_mul(static_cast<std::int64_t>(i) + 1, k_prime);
    }
    return out;
}

} // namespace rowmix
