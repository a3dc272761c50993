#pragma once

#include "befrac/rational.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace befrac {

// Eventually periodic base-s expansion: preperiod then (optional) repeating
// period. An empty period means the listed digits are followed by zeros.
// Digits must be < base and the period, when present, must be minimal;
// canonical form (no period of all (base-1) digits) is a queryable property,
// not a constructor requirement, because some constructions deliberately
// produce constant-(base-1) tails.
struct DigitString {
    int base = 3;
    std::vector<int> preperiod;
    std::vector<int> period;

    DigitString() = default;
    DigitString(int base, std::vector<int> preperiod, std::vector<int> period = {});

    bool is_terminating() const;   // period empty or all zeros
    bool is_canonical() const;     // not an all-(base-1) period
    int digit_at(std::size_t k) const; // 1-based index into the infinite expansion
    std::vector<int> take(std::size_t n) const;

    bool operator==(const DigitString&) const = default;
};

// First n digits of the canonical expansion of x in [0,1). Long division:
// digit = floor(base * p / q), remainder carried exactly.
std::vector<int> expand_rational(const Rational& x, int base, std::size_t n);

// Full eventually-periodic expansion with minimal preperiod and period.
// Terminating values come back with period [0].
DigitString detect_period(const Rational& x, int base);

// sum of digit_k * base^-k, exact
Rational value_of_prefix(const std::vector<int>& digits, int base);

std::vector<int> complement(const std::vector<int>& digits, int base);
DigitString complement(const DigitString& x);

// file format: "base=<s>\n" then contiguous ASCII digits, optional '|'
// separating preperiod from period; bases up to 10 only
void write_digit_file(std::ostream& os, const DigitString& x);
void write_digit_file(std::ostream& os, int base, const std::vector<int>& digits);
DigitString read_digit_file(std::istream& is);

} // namespace befrac
