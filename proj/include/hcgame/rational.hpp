#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace hcgame {

/// Exact rational with arbitrary-precision numerator and denominator, always
/// kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow2(unsigned k) {
    BigInt r = 1;
    r <<= k;
    return r;
}

inline Rational inverse_pow2(unsigned k) { return Rational(BigInt(1), pow2(k)); }

/// "num/den", or "num" when the denominator is 1.
inline std::string to_fraction_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

/// Parses "num/den" or "num".
inline Rational parse_fraction(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        return Rational(BigInt(s));
    }
    BigInt den(s.substr(slash + 1));
    if (den == 0) {
        throw std::invalid_argument("zero denominator in '" + s + "'");
    }
    return Rational(BigInt(s.substr(0, slash)), den);
}

namespace detail {
inline std::string strip_trailing_zeros(std::string s) {
    if (s.find('.') == std::string::npos || s.find('e') != std::string::npos) {
        return s;
    }
    while (!s.empty() && s.back() == '0') {
        s.pop_back();
    }
    if (!s.empty() && s.back() == '.') {
        s.pop_back();
    }
    return s;
}
}  // namespace detail

/// Decimal rendering with `sig` significant digits, round-half-even, trailing
/// zeros removed. Values must lie in (0, 10) or be exactly 0, which covers every
/// probability this project prints.
inline std::string to_decimal_string(const Rational& r, int sig = 12) {
    if (r == 0) {
        return "0";
    }
    if (r < 0 || r >= 10) {
        throw std::domain_error("decimal rendering supports values in [0, 10)");
    }
    // Find the exponent e with 10^e <= r < 10^(e+1), e <= 0.
    int e = 0;
    Rational scaled = r;
    while (scaled < 1) {
        scaled *= 10;
        e--;
    }
    // Digits: round(r * 10^(sig - 1 - e)).
    Rational x = r;
    for (int k = 0; k < sig - 1 - e; k++) {
        x *= 10;
    }
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    BigInt q = num / den;
    const BigInt rem = num - q * den;
    const BigInt twice = rem * 2;
    if (twice > den || (twice == den && (q % 2) == 1)) {
        q += 1;
    }
    std::string digits = q.str();
    int point = 1 + e;  // digits before the decimal point
    if (static_cast<int>(digits.size()) > sig) {
        // Rounding carried into a new leading digit.
        point += 1;
        digits.pop_back();
    }
    std::string out;
    if (point <= 0) {
        out = "0." + std::string(static_cast<size_t>(-point), '0') + digits;
    } else {
        out = digits.substr(0, static_cast<size_t>(point));
        if (static_cast<size_t>(point) < digits.size()) {
            out += "." + digits.substr(static_cast<size_t>(point));
        }
    }
    return detail::strip_trailing_zeros(out);
}

/// %.{sig}g rendering of a double (glibc rounds the exact binary value half-even).
inline std::string to_decimal_string(double v, int sig = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig, v);
    return buf;
}

inline double to_double(const Rational& r) { return static_cast<double>(r); }

}  // namespace hcgame
