#include "befrac/stream.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace befrac {

namespace {

std::string digits_to_text(const std::vector<int>& ds) {
    std::string s;
    for (int d : ds) {
        if (d < 0 || d > 9) throw std::domain_error("spec text: digits above 9 unsupported");
        s += static_cast<char>('0' + d);
    }
    return s;
}

std::vector<int> text_to_digits(const std::string& s) {
    std::vector<int> ds;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("spec text: bad digit character");
        ds.push_back(c - '0');
    }
    return ds;
}

// split on commas at parenthesis depth 0
std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

std::string strip(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::map<std::string, std::string> parse_kv(const std::vector<std::string>& args) {
    std::map<std::string, std::string> kv;
    for (const auto& arg : args) {
        auto eq = arg.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("spec text: expected key=value, got '" + arg + "'");
        std::string key = strip(arg.substr(0, eq)), val = strip(arg.substr(eq + 1));
        if (!kv.emplace(key, val).second)
            throw std::invalid_argument("spec text: duplicate key '" + key + "'");
    }
    return kv;
}

std::string need(const std::map<std::string, std::string>& kv, const std::string& key,
                 const std::string& kind) {
    auto it = kv.find(key);
    if (it == kv.end())
        throw std::invalid_argument("spec text: " + kind + " requires " + key + "=");
    return it->second;
}

int parse_digit(const std::string& s) {
    if (s.size() != 1 || s[0] < '0' || s[0] > '9')
        throw std::invalid_argument("spec text: expected a single digit, got '" + s + "'");
    return s[0] - '0';
}

std::shared_ptr<const ConstructionSpec> parse_nested(const std::string& s) {
    std::string t = strip(s);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw std::invalid_argument("spec text: nested spec must be parenthesized");
    return std::make_shared<const ConstructionSpec>(parse_spec(t.substr(1, t.size() - 2)));
}

} // namespace

void validate_spec(const ConstructionSpec& spec) {
    auto digit_ok = [&](int d) { return d >= 0 && d < spec.base; };
    switch (spec.kind) {
    case ConstructionKind::Periodic:
        if (spec.digits.empty()) throw std::invalid_argument("period: needs at least one digit");
        // digit range and period minimality, enforced by the ctor
        (void)DigitString(spec.base, spec.preperiod, spec.digits);
        break;
    case ConstructionKind::Frequency:
        if (spec.a < 0 || spec.a > 1) throw std::domain_error("freq: target outside [0,1]");
        if (!digit_ok(spec.i) || !digit_ok(spec.j)) throw std::domain_error("freq: digit out of range");
        if (spec.i == spec.j && spec.a != 0 && spec.a != 1)
            throw std::domain_error("freq: digits must differ");
        break;
    case ConstructionKind::Beatty:
        if (spec.beatty_a.is_rational())
            throw std::domain_error("beatty: rational target, use freq: instead");
        if (spec.beatty_a.cmp(Rational(0)) <= 0 || spec.beatty_a.cmp(Rational(1)) >= 0)
            throw std::domain_error("beatty: target outside (0,1)");
        if (!digit_ok(spec.i) || !digit_ok(spec.j) || spec.i == spec.j)
            throw std::domain_error("beatty: bad digit pair");
        break;
    case ConstructionKind::NoFrequency:
        if (!digit_ok(spec.i) || !digit_ok(spec.j) || spec.i == spec.j)
            throw std::domain_error("nofreq: bad digit pair");
        break;
    case ConstructionKind::Witness:
        for (int d : spec.digits)
            if (!digit_ok(d)) throw std::domain_error("witness: prefix digit out of range");
        if (!spec.tail_cyclic && !digit_ok(spec.tail_digit))
            throw std::domain_error("witness: tail digit out of range");
        break;
    case ConstructionKind::Triple: {
        QuadraticSurd sum = spec.tau[0] + spec.tau[1] + spec.tau[2];
        if (sum.cmp(Rational(1)) != 0)
            throw std::domain_error("triple: frequencies must sum to 1");
        for (const auto& t : spec.tau)
            if (t.sign() < 0 || t.cmp(Rational(1)) > 0)
                throw std::domain_error("triple: frequency outside [0,1]");
        break;
    }
    case ConstructionKind::Interleave:
        if (!spec.x) throw std::invalid_argument("interleave: missing inner spec");
        if (!digit_ok(spec.filler)) throw std::domain_error("interleave: filler out of range");
        if (spec.x->base > spec.base)
            throw std::domain_error("interleave: inner digits exceed the output base");
        break;
    case ConstructionKind::Star:
        if (!spec.x0 || !spec.x) throw std::invalid_argument("star: missing x0= or x=");
        if (spec.x0->base != 3 || spec.x->base != 3)
            throw std::domain_error("star: both streams must be ternary");
        break;
    case ConstructionKind::Complement:
        if (!spec.x) throw std::invalid_argument("comp: missing inner spec");
        break;
    }
}

std::string ConstructionSpec::to_string() const {
    std::ostringstream os;
    switch (kind) {
    case ConstructionKind::Periodic:
        os << "period:";
        if (!preperiod.empty()) os << digits_to_text(preperiod) << '|';
        os << digits_to_text(digits);
        if (base != 3) os << ",base=" << base;
        break;
    case ConstructionKind::Frequency:
        os << "freq:a=" << befrac::to_string(a) << ",i=" << i << ",j=" << j;
        break;
    case ConstructionKind::Beatty:
        os << "beatty:a=" << beatty_a.to_string() << ",i=" << i << ",j=" << j;
        break;
    case ConstructionKind::NoFrequency:
        os << "nofreq:i=" << i << ",j=" << j;
        break;
    case ConstructionKind::Witness:
        os << "witness:prefix=" << digits_to_text(digits) << ",tail=";
        if (tail_cyclic)
            os << "012";
        else
            os << tail_digit;
        break;
    case ConstructionKind::Triple:
        os << "triple:" << tau[0].to_string() << "," << tau[1].to_string() << ","
           << tau[2].to_string();
        break;
    case ConstructionKind::Interleave:
        os << "interleave:x=(" << x->to_string() << "),filler=" << filler;
        if (base != 3) os << ",base=" << base;
        break;
    case ConstructionKind::Star:
        os << "star:x0=(" << x0->to_string() << "),x=(" << x->to_string() << ")";
        break;
    case ConstructionKind::Complement:
        os << "comp:x=(" << x->to_string() << ")";
        break;
    }
    return os.str();
}

ConstructionSpec parse_spec(const std::string& in) {
    std::string s = strip(in);
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("spec text: expected '<kind>:<args>', got '" + in + "'");
    std::string kind = s.substr(0, colon);
    auto args = split_args(s.substr(colon + 1));

    ConstructionSpec spec;
    if (kind == "period") {
        spec.kind = ConstructionKind::Periodic;
        if (args.empty()) throw std::invalid_argument("period: missing digits");
        std::string body = strip(args[0]);
        if (auto bar = body.find('|'); bar != std::string::npos) {
            spec.preperiod = text_to_digits(body.substr(0, bar));
            spec.digits = text_to_digits(body.substr(bar + 1));
        } else {
            spec.digits = text_to_digits(body);
        }
        auto kv = parse_kv({args.begin() + 1, args.end()});
        if (auto it = kv.find("base"); it != kv.end()) spec.base = std::stoi(it->second);
    } else if (kind == "freq") {
        spec.kind = ConstructionKind::Frequency;
        auto kv = parse_kv(args);
        spec.a = parse_rational(need(kv, "a", kind));
        spec.i = parse_digit(need(kv, "i", kind));
        spec.j = parse_digit(need(kv, "j", kind));
    } else if (kind == "beatty") {
        spec.kind = ConstructionKind::Beatty;
        auto kv = parse_kv(args);
        spec.beatty_a = parse_surd(need(kv, "a", kind));
        spec.i = parse_digit(need(kv, "i", kind));
        spec.j = parse_digit(need(kv, "j", kind));
    } else if (kind == "nofreq") {
        spec.kind = ConstructionKind::NoFrequency;
        auto kv = parse_kv(args);
        spec.i = parse_digit(need(kv, "i", kind));
        spec.j = parse_digit(need(kv, "j", kind));
    } else if (kind == "witness") {
        spec.kind = ConstructionKind::Witness;
        auto kv = parse_kv(args);
        spec.digits = text_to_digits(need(kv, "prefix", kind));
        std::string tail = need(kv, "tail", kind);
        if (tail == "012") {
            spec.tail_cyclic = true;
        } else {
            spec.tail_cyclic = false;
            spec.tail_digit = parse_digit(tail);
        }
    } else if (kind == "triple") {
        spec.kind = ConstructionKind::Triple;
        if (args.size() != 3)
            throw std::invalid_argument("triple: expected three comma-separated frequencies");
        for (int k = 0; k < 3; ++k) spec.tau[k] = parse_surd(strip(args[k]));
    } else if (kind == "interleave") {
        spec.kind = ConstructionKind::Interleave;
        auto kv = parse_kv(args);
        spec.x = parse_nested(need(kv, "x", kind));
        spec.filler = parse_digit(need(kv, "filler", kind));
        if (auto it = kv.find("base"); it != kv.end()) spec.base = std::stoi(it->second);
    } else if (kind == "star") {
        spec.kind = ConstructionKind::Star;
        auto kv = parse_kv(args);
        spec.x0 = parse_nested(need(kv, "x0", kind));
        spec.x = parse_nested(need(kv, "x", kind));
    } else if (kind == "comp") {
        spec.kind = ConstructionKind::Complement;
        auto kv = parse_kv(args);
        spec.x = parse_nested(need(kv, "x", kind));
        spec.base = spec.x->base;
    } else {
        throw std::invalid_argument("spec text: unknown construction '" + kind + "'");
    }
    validate_spec(spec);
    return spec;
}

} // namespace befrac
