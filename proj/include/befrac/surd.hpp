#pragma once

#include "befrac/rational.hpp"

#include <optional>
#include <string>

namespace befrac {

// (p + q*sqrt(d)) / r with r > 0, d >= 0 square-free, q = 0 <=> d = 0.
// All comparisons are exact integer arithmetic; mixing two different
// nonzero radicands is rejected rather than approximated.
struct QuadraticSurd {
    BigInt p{0}, q{0};
    BigInt d{0};
    BigInt r{1};

    QuadraticSurd() = default;
    QuadraticSurd(BigInt p_, BigInt q_, BigInt d_, BigInt r_);

    static QuadraticSurd from_rational(const Rational& x);
    static QuadraticSurd sqrt_of(const BigInt& d); // sqrt(d)

    bool is_rational() const { return q == 0; }
    Rational as_rational() const; // throws if irrational

    int sign() const;                          // -1, 0, +1
    int cmp(const QuadraticSurd& o) const;     // requires compatible radicand
    int cmp(const Rational& x) const;

    QuadraticSurd operator+(const QuadraticSurd& o) const;
    QuadraticSurd operator-(const QuadraticSurd& o) const;
    QuadraticSurd operator-() const;
    QuadraticSurd scaled(const BigInt& n) const; // n * value

    BigInt floor_times(const BigInt& n) const;   // floor(n * value), exact
    double to_double() const;
    std::string to_string() const;               // round-trips through parse_surd
};

// Accepts "sqrt(2)/2", "(sqrt(5)-1)/2", "(1+2*sqrt(3))/4", "3/10", "0.3", "2".
QuadraticSurd parse_surd(const std::string& s);

// sign of p + q*sqrt(d) without constructing a canonical surd; d >= 0,
// d need not be square-free (hot-loop building block for exact cursors)
int surd_sign(const BigInt& p, const BigInt& q, const BigInt& d);

} // namespace befrac
