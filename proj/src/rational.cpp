#include "rowmix/rational.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

#include "rowmix/checked.hpp"

namespace rowmix {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v, const char* what) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
        throw std::overflow_error(std::string("rational overflow in ") + what);
    return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

} // namespace

Rational::Rational(std::int64_t n) : num(n), den(1) {}

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) {
        n = checked_sub(0, n);
        d = checked_sub(0, d);
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    num = g == 0 ? 0 : n / g;
    den = g == 0 ? 1 : d / g;
}

bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num) * b.den < i128(b.num) * a.den;
}

Rational operator+(const Rational& a, const Rational& b) {
    i128 n = i128(a.num) * b.den + i128(b.num) * a.den;
    i128 d = i128(a.den) * b.den;
    const i128 g = gcd128(n, d);
    if (g != 0) { n /= g; d /= g; } else { n = 0; d = 1; }
    return Rational(narrow(n, "addition"), narrow(d, "addition"));
}

Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(checked_sub(0, b.num), b.den);
}

Rational operator*(const Rational& a, const Rational& b) {
    // cross-reduce first to keep intermediates small
    const std::int64_t g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
    const std::int64_t g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
    const i128 n = i128(a.num / (g1 ? g1 : 1)) * (b.num / (g2 ? g2 : 1));
    const i128 d = i128(a.den / (g2 ? g2 : 1)) * (b.den / (g1 ? g1 : 1));
    return Rational(narrow(n, "multiplication"), narrow(d, "multiplication"));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::invalid_argument("rational division by zero");
    return a * Rational(b.den, b.num);
}

Rational parse_rational(std::string_view text) {
    // trim spaces
    size_t begin = 0, end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    text = text.substr(begin, end - begin);
    if (text.empty()) throw std::invalid_argument("empty rational literal");

    const auto parse_int = [](std::string_view s) -> std::int64_t {
        if (s.empty()) throw std::invalid_argument("empty integer literal");
        size_t i = 0;
        bool neg = false;
        if (s[0] == '+' || s[0] == '-') {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw std::invalid_argument("sign without digits");
        std::int64_t v = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw std::invalid_argument("invalid digit in number: " + std::string(s));
            v = checked_add(checked_mul(v, 10), s[i] - '0');
        }
        return neg ? checked_sub(0, v) : v;
    };

    const size_t slash = text.find('/');
    if (slash != std::string_view::npos) {
        const std::int64_t n = parse_int(text.substr(0, slash));
        const std::int64_t d = parse_int(text.substr(slash + 1));
        return Rational(n, d);
    }

    const size_t dot = text.find('.');
    if (dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty()) throw std::invalid_argument("decimal point without digits: " + std::string(text));
        bool neg = !whole.empty() && whole[0] == '-';
        std::int64_t w = whole.empty() || whole == "-" || whole == "+" ? 0 : parse_int(whole);
        if (w < 0) w = -w;
        std::int64_t scale = 1;
        std::int64_t f = 0;
        for (char c : frac) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("invalid digit in decimal: " + std::string(text));
            f = checked_add(checked_mul(f, 10), c - '0');
            scale = checked_mul(scale, 10);
        }
        std::int64_t n = checked_add(checked_mul(w, scale), f);
        if (neg) n = checked_sub(0, n);
        return Rational(n, scale);
    }

    return Rational(parse_int(text));
}

std::string format_rational(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);

    // terminating decimal iff den = 2^a * 5^b
    std::int64_t d = r.den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return std::to_string(r.num) + "/" + std::to_string(r.den);

    const int digits = twos > fives ? twos : fives;
    i128 scaled = i128(r.num);
    for (int i = 0; i < digits; ++i) scaled *= 10;
    scaled /= r.den;

    const bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string body;
    for (i128 v = scaled; v > 0; v /= 10) body.insert(body.begin(), char('0' + int(v % 10)));
    while (static_cast<int>(body.size()) <= digits) body.insert(body.begin(), '0');
    body.insert(body.size() - digits, ".");
    return (neg ? "-" : "") + body;
}

} // namespace rowmix
