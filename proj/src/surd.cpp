#include "befrac/surd.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace befrac {

namespace {

BigInt gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    return boost::multiprecision::gcd(a, b);
}

// d = f^2 * d' with d' square-free; returns (f, d')
std::pair<BigInt, BigInt> extract_square(BigInt d) {
    BigInt f = 1;
    for (BigInt k = 2; k * k <= d; ++k) {
        BigInt kk = k * k;
        while (d % kk == 0) {
            d /= kk;
            f *= k;
        }
    }
    return {f, d};
}

// floor(m * sqrt(d)) for any sign of m, d >= 0
BigInt sqrt_floor_scaled(const BigInt& m, const BigInt& d) {
    if (m == 0 || d == 0) return 0;
    BigInt k = m * m * d;
    BigInt s = isqrt(k);
    if (m > 0) return s;
    return s * s == k ? BigInt(-s) : BigInt(-s - 1);
}

int sign_of(const BigInt& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

} // namespace

int surd_sign(const BigInt& p, const BigInt& q, const BigInt& d) {
    if (q == 0 || d == 0) return sign_of(p);
    if (q > 0) {
        if (p >= 0) return 1;
        BigInt lhs = q * q * d, rhs = p * p;
        return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
    }
    if (p <= 0) return -1;
    BigInt lhs = p * p, rhs = q * q * d;
    return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
}

QuadraticSurd::QuadraticSurd(BigInt p_, BigInt q_, BigInt d_, BigInt r_)
    : p(std::move(p_)), q(std::move(q_)), d(std::move(d_)), r(std::move(r_)) {
    if (r == 0) throw std::domain_error("QuadraticSurd: zero denominator");
    if (d < 0) throw std::domain_error("QuadraticSurd: negative radicand");
    if (r < 0) {
        r = -r;
        p = -p;
        q = -q;
    }
    if (q == 0) {
        d = 0;
    } else if (d == 0) {
        q = 0;
    } else {
        auto [f, d2] = extract_square(d);
        q *= f;
        d = d2;
        if (d == 1) { // perfect square folded into the rational part
            p += q;
            q = 0;
            d = 0;
        }
    }
    BigInt g = gcd(gcd(p, q), r);
    if (g > 1) {
        p /= g;
        q /= g;
        r /= g;
    }
}

QuadraticSurd QuadraticSurd::from_rational(const Rational& x) {
    return QuadraticSurd(num(x), 0, 0, den(x));
}

QuadraticSurd QuadraticSurd::sqrt_of(const BigInt& dd) {
    return QuadraticSurd(0, 1, dd, 1);
}

Rational QuadraticSurd::as_rational() const {
    if (!is_rational()) throw std::domain_error("as_rational: irrational value");
    return Rational(p, r);
}

int QuadraticSurd::sign() const { return surd_sign(p, q, d); }

int QuadraticSurd::cmp(const QuadraticSurd& o) const {
    BigInt dd;
    if (q == 0 && o.q == 0)
        dd = 0;
    else if (q == 0)
        dd = o.d;
    else if (o.q == 0)
        dd = d;
    else if (d == o.d)
        dd = d;
    else
        throw std::invalid_argument("QuadraticSurd: comparison across different radicands");
    BigInt np = p * o.r - o.p * r;
    BigInt nq = q * o.r - o.q * r;
    return surd_sign(np, nq, dd);
}

int QuadraticSurd::cmp(const Rational& x) const { return cmp(from_rational(x)); }

QuadraticSurd QuadraticSurd::operator+(const QuadraticSurd& o) const {
    BigInt dd;
    if (q == 0 && o.q == 0)
        dd = 0;
    else if (q == 0)
        dd = o.d;
    else if (o.q == 0)
        dd = d;
    else if (d == o.d)
        dd = d;
    else
        throw std::invalid_argument("QuadraticSurd: sum across different radicands");
    return QuadraticSurd(p * o.r + o.p * r, q * o.r + o.q * r, dd, r * o.r);
}

QuadraticSurd QuadraticSurd::operator-(const QuadraticSurd& o) const { return *this + (-o); }

QuadraticSurd QuadraticSurd::operator-() const {
    QuadraticSurd s = *this;
    s.p = -s.p;
    s.q = -s.q;
    return s;
}

QuadraticSurd QuadraticSurd::scaled(const BigInt& n) const {
    return QuadraticSurd(n * p, n * q, d, r);
}

BigInt QuadraticSurd::floor_times(const BigInt& n) const {
    // floor((n*p + n*q*sqrt(d))/r); the irrational part's floor can be taken
    // first because its fractional remainder is < 1 and r*floor_div leaves
    // room for it (numerator mod r <= r-1).
    BigInt a = n * p + sqrt_floor_scaled(n * q, d);
    return floor_div(a, r);
}

double QuadraticSurd::to_double() const {
    double v = p.convert_to<double>();
    if (q != 0) v += q.convert_to<double>() * std::sqrt(d.convert_to<double>());
    return v / r.convert_to<double>();
}

std::string QuadraticSurd::to_string() const {
    if (is_rational()) return befrac::to_string(Rational(p, r));
    std::string root = "sqrt(" + d.str() + ")";
    std::string qpart;
    BigInt aq = q < 0 ? BigInt(-q) : q;
    if (aq == 1)
        qpart = root;
    else
        qpart = aq.str() + "*" + root;
    std::string body;
    if (p == 0)
        body = (q < 0 ? "-" : "") + qpart;
    else
        body = p.str() + (q < 0 ? "-" : "+") + qpart;
    if (r == 1) return p == 0 ? body : "(" + body + ")";
    if (p == 0 && q > 0) return body + "/" + r.str();
    return "(" + body + ")/" + r.str();
}

namespace {

struct SurdScanner {
    const std::string& s;
    size_t i = 0;

    explicit SurdScanner(const std::string& str) : s(str) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool eat_word(const char* w) {
        skip_ws();
        size_t n = std::char_traits<char>::length(w);
        if (s.compare(i, n, w) == 0) {
            i += n;
            return true;
        }
        return false;
    }
    bool peek_digit() {
        skip_ws();
        return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
    }
    BigInt integer() {
        skip_ws();
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw std::invalid_argument("parse_surd: expected integer in '" + s + "'");
        BigInt v(s.substr(i, j - i));
        i = j;
        return v;
    }
    bool done() {
        skip_ws();
        return i == s.size();
    }
};

// term := INT ['*' sqrt '(' INT ')'] | sqrt '(' INT ')'
// accumulates into (p, q, d); radicands are square-freed before unification
void parse_term(SurdScanner& sc, int sgn, BigInt& p, BigInt& q, BigInt& d) {
    BigInt coef = 1;
    if (sc.peek_digit()) {
        coef = sc.integer();
        if (!sc.eat('*')) {
            p += sgn * coef;
            return;
        }
    }
    if (!sc.eat_word("sqrt") || !sc.eat('('))
        throw std::invalid_argument("parse_surd: expected sqrt(...)");
    BigInt rad = sc.integer();
    if (!sc.eat(')')) throw std::invalid_argument("parse_surd: missing ')'");
    auto [f, d2] = extract_square(rad);
    coef *= f;
    if (d2 <= 1) { // sqrt of a perfect square (or of 0) is rational
        if (d2 == 1) p += sgn * coef;
        return;
    }
    if (d == 0)
        d = d2;
    else if (d != d2)
        throw std::invalid_argument("parse_surd: mixed radicands");
    q += sgn * coef;
}

} // namespace

QuadraticSurd parse_surd(const std::string& in) {
    if (in.find("sqrt") == std::string::npos) return QuadraticSurd::from_rational(parse_rational(in));

    SurdScanner sc(in);
    BigInt p = 0, q = 0, d = 0, r = 1;
    bool parens = sc.eat('(');
    int sgn = sc.eat('-') ? -1 : (sc.eat('+'), 1);
    parse_term(sc, sgn, p, q, d);
    int terms = 1;
    for (;;) {
        if (sc.eat('+'))
            parse_term(sc, 1, p, q, d);
        else if (sc.eat('-'))
            parse_term(sc, -1, p, q, d);
        else
            break;
        ++terms;
    }
    if (parens && !sc.eat(')')) throw std::invalid_argument("parse_surd: missing ')'");
    if (sc.eat('/')) {
        if (!parens && terms > 1)
            throw std::invalid_argument("parse_surd: parenthesize the numerator before '/'");
        r = sc.integer();
        if (r == 0) throw std::invalid_argument("parse_surd: zero denominator");
    }
    if (!sc.done()) throw std::invalid_argument("parse_surd: trailing input in '" + in + "'");
    return QuadraticSurd(p, q, d, r);
}

} // namespace befrac
