#include "befrac/rational.hpp"

#include <cctype>

namespace befrac {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& in) {
    std::string s = in;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty()) throw std::invalid_argument("parse_rational: empty input");

    Rational v;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        if (!all_digits(ns) || !all_digits(ds))
            throw std::invalid_argument("parse_rational: bad fraction '" + in + "'");
        BigInt n(ns), d(ds);
        if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
        v = Rational(n, d);
    } else if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
            throw std::invalid_argument("parse_rational: bad decimal '" + in + "'");
        BigInt scale = pow_int(10, static_cast<unsigned>(fp.size()));
        BigInt n = BigInt(ip) * scale + (fp.empty() ? BigInt(0) : BigInt(fp));
        v = Rational(n, scale);
    } else {
        if (!all_digits(s))
            throw std::invalid_argument("parse_rational: bad integer '" + in + "'");
        v = Rational(BigInt(s));
    }
    return neg ? -v : v;
}

std::string to_string(const Rational& x) {
    std::string s = num(x).str();
    if (den(x) != 1) s += "/" + den(x).str();
    return s;
}

} // namespace befrac
