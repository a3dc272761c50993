#include "befrac/digits.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

namespace befrac {

namespace {

void check_base(int base) {
    if (base < 2) throw std::domain_error("base must be >= 2");
}

void check_digits(const std::vector<int>& ds, int base) {
    for (int d : ds)
        if (d < 0 || d >= base) throw std::domain_error("digit out of range for base");
}

// smallest p such that rotating by p maps the sequence onto itself
std::size_t minimal_period_length(const std::vector<int>& w) {
    for (std::size_t p = 1; p < w.size(); ++p) {
        if (w.size() % p != 0) continue;
        bool ok = true;
        for (std::size_t k = p; k < w.size() && ok; ++k) ok = w[k] == w[k - p];
        if (ok) return p;
    }
    return w.empty() ? 0 : w.size();
}

} // namespace

DigitString::DigitString(int base_, std::vector<int> pre, std::vector<int> per)
    : base(base_), preperiod(std::move(pre)), period(std::move(per)) {
    check_base(base);
    check_digits(preperiod, base);
    check_digits(period, base);
    if (!period.empty() && minimal_period_length(period) != period.size())
        throw std::domain_error("DigitString: period is not minimal");
}

bool DigitString::is_terminating() const {
    return std::all_of(period.begin(), period.end(), [](int d) { return d == 0; });
}

bool DigitString::is_canonical() const {
    if (period.empty()) return true;
    return !std::all_of(period.begin(), period.end(),
                        [this](int d) { return d == base - 1; });
}

int DigitString::digit_at(std::size_t k) const {
    if (k == 0) throw std::domain_error("digit_at: positions are 1-based");
    if (k <= preperiod.size()) return preperiod[k - 1];
    if (period.empty()) return 0;
    return period[(k - preperiod.size() - 1) % period.size()];
}

std::vector<int> DigitString::take(std::size_t n) const {
    std::vector<int> out;
    out.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) out.push_back(digit_at(k));
    return out;
}

std::vector<int> expand_rational(const Rational& x, int base, std::size_t n) {
    check_base(base);
    if (x < 0 || x >= 1)
        throw std::domain_error("expand_rational: value outside [0,1)");
    std::vector<int> out;
    out.reserve(n);
    BigInt p = num(x);
    const BigInt q = den(x);
    for (std::size_t k = 0; k < n; ++k) {
        p *= base;
        BigInt d = p / q;
        p -= d * q;
        out.push_back(static_cast<int>(d));
    }
    return out;
}

DigitString detect_period(const Rational& x, int base) {
    check_base(base);
    if (x < 0 || x >= 1)
        throw std::domain_error("detect_period: value outside [0,1)");
    const BigInt q = den(x);
    BigInt p = num(x);
    std::map<BigInt, std::size_t> seen; // remainder -> step index at which it appeared
    std::vector<int> digits;
    std::size_t step = 0;
    for (;;) {
        auto it = seen.find(p);
        if (it != seen.end()) {
            std::size_t start = it->second;
            std::vector<int> pre(digits.begin(), digits.begin() + start);
            std::vector<int> per(digits.begin() + start, digits.end());
            return DigitString(base, std::move(pre), std::move(per));
        }
        seen.emplace(p, step);
        p *= base;
        BigInt d = p / q;
        p -= d * q;
        digits.push_back(static_cast<int>(d));
        ++step;
    }
}

Rational value_of_prefix(const std::vector<int>& digits, int base) {
    check_base(base);
    check_digits(digits, base);
    BigInt p = 0;
    for (int d : digits) p = p * base + d;
    return Rational(p, pow_int(base, static_cast<unsigned>(digits.size())));
}

std::vector<int> complement(const std::vector<int>& digits, int base) {
    check_base(base);
    check_digits(digits, base);
    std::vector<int> out;
    out.reserve(digits.size());
    for (int d : digits) out.push_back(base - 1 - d);
    return out;
}

DigitString complement(const DigitString& x) {
    DigitString out;
    out.base = x.base;
    out.preperiod = complement(x.preperiod, x.base);
    out.period = complement(x.period, x.base);
    return out;
}

void write_digit_file(std::ostream& os, const DigitString& x) {
    if (x.base > 10) throw std::domain_error("digit file format supports bases <= 10");
    os << "base=" << x.base << "\n";
    for (int d : x.preperiod) os << d;
    if (!x.period.empty()) {
        os << '|';
        for (int d : x.period) os << d;
    }
    os << "\n";
}

void write_digit_file(std::ostream& os, int base, const std::vector<int>& digits) {
    if (base > 10) throw std::domain_error("digit file format supports bases <= 10");
    check_digits(digits, base);
    os << "base=" << base << "\n";
    for (int d : digits) os << d;
    os << "\n";
}

DigitString read_digit_file(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("base=", 0) != 0)
        throw std::invalid_argument("digit file: missing 'base=<s>' header");
    int base = std::stoi(header.substr(5));
    if (base < 2 || base > 10)
        throw std::invalid_argument("digit file: base out of range");
    std::string body, line;
    while (std::getline(is, line)) body += line;
    std::vector<int> pre, per;
    bool in_period = false;
    for (char c : body) {
        if (c == '|') {
            if (in_period) throw std::invalid_argument("digit file: repeated '|'");
            in_period = true;
            continue;
        }
        if (c < '0' || c > '9') throw std::invalid_argument("digit file: bad character");
        (in_period ? per : pre).push_back(c - '0');
    }
    if (in_period && per.empty())
        throw std::invalid_argument("digit file: empty period after '|'");
    return DigitString(base, std::move(pre), std::move(per));
}

} // namespace befrac
