#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace befrac {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& x) { return boost::multiprecision::numerator(x); }
inline BigInt den(const Rational& x) { return boost::multiprecision::denominator(x); }

// floor(a/b) for b > 0, exact for negative a as well
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b, r = a % b;
    if (r != 0 && a < 0) --q;
    return q;
}

inline BigInt floor_rational(const Rational& x) { return floor_div(num(x), den(x)); }

// integer square root, floor(sqrt(n)), n >= 0
inline BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    return boost::multiprecision::sqrt(n);
}

inline BigInt pow_int(const BigInt& b, unsigned e) {
    return boost::multiprecision::pow(b, e);
}

// "p/q", "p", or a plain decimal like "0.3" (parsed exactly, not via double)
Rational parse_rational(const std::string& s);

std::string to_string(const Rational& x); // "p/q", or "p" when q == 1

} // namespace befrac
