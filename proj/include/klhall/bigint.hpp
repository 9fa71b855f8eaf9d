#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace klhall {

// Arbitrary-precision signed integer. Everything downstream (partition
// parts, digits, sequence values) grows geometrically, so no fixed width.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

// Floor division with sign handling (C++ '/' truncates toward zero).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    if (b == 0) throw std::domain_error("floor_div: zero divisor");
    BigInt q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    if (b == 0) throw std::domain_error("ceil_div: zero divisor");
    BigInt q = a / b;
    if ((a % b) != 0 && ((a < 0) == (b < 0))) ++q;
    return q;
}

// Largest s with s*s <= a (a >= 0).
inline BigInt isqrt(const BigInt& a) {
    if (a < 0) throw std::domain_error("isqrt: negative argument");
    return boost::multiprecision::sqrt(a);
}

inline bool is_square(const BigInt& a) {
    if (a < 0) return false;
    BigInt s = isqrt(a);
    return s * s == a;
}

inline std::string to_string(const BigInt& a) { return a.str(); }

}  // namespace klhall
