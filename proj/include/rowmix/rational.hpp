#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rowmix {

// Exact rational number on int64 numerator/denominator, always normalized
// (den > 0, gcd(|num|, den) == 1). Arithmetic is overflow-checked via
// __int128 intermediates.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n);                  // NOLINT: implicit from integer is intended
    Rational(std::int64_t n, std::int64_t d);  // normalizes

    bool is_integer() const { return den == 1; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
};

bool operator<(const Rational& a, const Rational& b);
inline bool operator>(const Rational& a, const Rational& b) { return b < a; }
inline bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
inline bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);
Rational operator/(const Rational& a, const Rational& b);

/// Parses "42", "-3.25" or "7/2". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Exact text form: integers as-is, terminating decimals as decimals,
/// everything else as "p/q". Never floating point.
std::string format_rational(const Rational& r);

} // namespace rowmix
