#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "rowmix/exact.hpp"

namespace rowmix {

namespace {

PermutationProfile countermonotone_profile(const Matrix& A) {
    if (A.d != 2) throw std::invalid_argument("needs exactly two columns");
    std::vector<int> up(A.m), down(A.m);
    std::iota(up.begin(), up.end(), 0);
    down = up;
    std::sort(up.begin(), up.end(), [&](int a, int b) {
        if (A.at(a, 0) != A.at(b, 0)) return A.at(a, 0) < A.at(b, 0);
        return a < b;
    });
    std::sort(down.begin(), down.end(), [&](int a, int b) {
        if (A.at(a, 1) != A.at(b, 1)) return A.at(a, 1) > A.at(b, 1);
        return a < b;
    });
    PermutationProfile profile;
    profile.perms = {inverse_permutation(up), inverse_permutation(down)};
    return profile;
}

} // namespace

MixResult gamma_two_columns(const Matrix& A) {
    return result_for_profile(Objective::gamma, A, countermonotone_profile(A),
                              Status::exact());
}

MixResult beta_two_columns(const Matrix& A) {
    return result_for_profile(Objective::beta, A, countermonotone_profile(A),
                              Status::exact());
}

} // namespace rowmix
