#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rowmix {

// All solver arithmetic runs on exact 64-bit integers. These helpers throw
// instead of wrapping, so an instance that is too large fails loudly.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out))
        throw std::overflow_error("integer overflow in addition: " + std::to_string(a) + " + " +
                                  std::to_string(b));
    return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_sub_overflow(a, b, &out))
        throw std::overflow_error("integer overflow in subtraction: " + std::to_string(a) + " - " +
                                  std::to_string(b));
    return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("integer overflow in multiplication: " + std::to_string(a) +
                                  " * " + std::to_string(b));
    return out;
}

// a^k for k >= 0 with overflow checks.
inline std::int64_t checked_pow(std::int64_t base, std::uint32_t exponent) {
    std::int64_t result = 1;
    for (std::uint32_t i = 0; i < exponent; ++i) result = checked_mul(result, base);
    return result;
}

} // namespace rowmix
