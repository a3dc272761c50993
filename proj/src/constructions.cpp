#include "befrac/constructions.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace befrac {

namespace {

void check_digit(int d, int base, const char* what) {
    if (d < 0 || d >= base) throw std::domain_error(std::string(what) + ": digit out of range");
}

// --- cursors ---

class DigitStringCursor : public DigitCursor {
  public:
    explicit DigitStringCursor(DigitString ds) : ds_(std::move(ds)) {}
    int next() override {
        if (pos_ < ds_.preperiod.size()) return ds_.preperiod[pos_++];
        if (ds_.period.empty()) return 0;
        int d = ds_.period[per_pos_];
        if (++per_pos_ == ds_.period.size()) per_pos_ = 0;
        return d;
    }

  private:
    DigitString ds_;
    std::size_t pos_ = 0, per_pos_ = 0;
};

class BeattyCursor : public DigitCursor {
  public:
    BeattyCursor(const QuadraticSurd& a, int i, int j)
        : p_(a.p), q_(a.q), d_(a.d), r_(a.r), i_(i), j_(j) {}
    int next() override {
        ++n_;
        // digit is i exactly when floor(n*a) > floor((n-1)*a), i.e. n*a >= c+1
        BigInt np = n_ * p_ - (c_ + 1) * r_;
        if (surd_sign(np, n_ * q_, d_) >= 0) {
            ++c_;
            return i_;
        }
        return j_;
    }

  private:
    BigInt p_, q_, d_, r_;
    int i_, j_;
    BigInt n_{0}, c_{0};
};

class NoFreqCursor : public DigitCursor {
  public:
    NoFreqCursor(int i, int j) : i_(i), j_(j) {}
    int next() override {
        int d = in_i_ ? i_ : j_;
        if (--remaining_ == 0) {
            if (in_i_) {
                in_i_ = false;
                remaining_ = blocklen_;
            } else {
                blocklen_ <<= 1;
                in_i_ = true;
                remaining_ = blocklen_;
            }
        }
        return d;
    }

  private:
    int i_, j_;
    bool in_i_ = true;
    unsigned long long blocklen_ = 1, remaining_ = 1;
};

// argmax_i of (n*tau_i - N_i(n-1)); entries share radicand d_ and denominator R_
class LargestRemainderCursor : public DigitCursor {
  public:
    LargestRemainderCursor(std::array<BigInt, 3> P, std::array<BigInt, 3> Q, BigInt d, BigInt R)
        : P_(std::move(P)), Q_(std::move(Q)), d_(std::move(d)), R_(std::move(R)) {}
    int next() override {
        ++n_;
        int best = 0;
        for (int i = 1; i < 3; ++i) {
            BigInt np = (n_ * (P_[i] - P_[best])) - (N_[i] - N_[best]) * R_;
            BigInt nq = n_ * (Q_[i] - Q_[best]);
            if (surd_sign(np, nq, d_) > 0) best = i;
        }
        ++N_[best];
        return best;
    }

  private:
    std::array<BigInt, 3> P_, Q_;
    BigInt d_, R_;
    BigInt n_{0};
    std::array<BigInt, 3> N_{BigInt(0), BigInt(0), BigInt(0)};
};

class InterleaveCursor : public DigitCursor {
  public:
    InterleaveCursor(DigitStream x, int filler) : x_(std::move(x)), filler_(filler) {}
    int next() override {
        ++pos_;
        if (!saturated_ && pos_ == next_pow_) {
            if (next_pow_ > std::numeric_limits<unsigned long long>::max() / 3)
                saturated_ = true;
            else
                next_pow_ *= 3;
            return x_.next();
        }
        return filler_;
    }

  private:
    DigitStream x_;
    int filler_;
    unsigned long long pos_ = 0, next_pow_ = 3;
    bool saturated_ = false;
};

class StarCursor : public DigitCursor {
  public:
    StarCursor(DigitStream x0, DigitStream x) : x0_(std::move(x0)), x_(std::move(x)) {}
    int next() override {
        if (pending_ >= 0) {
            int d = pending_;
            pending_ = -1;
            return d;
        }
        if (!have_la_) {
            la_ = x0_.next();
            have_la_ = true;
        }
        for (;;) {
            int expected = static_cast<int>(blocks_done_ % 3);
            if (la_ == expected) {
                int d = la_;
                la_ = x0_.next();
                if (la_ != expected) { // maximal run ends here
                    ++blocks_done_;
                    if (at_milestone()) pending_ = x_.next();
                }
                return d;
            }
            // this phase's block is empty
            ++blocks_done_;
            if (at_milestone()) return x_.next();
        }
    }

  private:
    bool at_milestone() {
        if (saturated_ || blocks_done_ != milestone_) return false;
        if (milestone_ > std::numeric_limits<unsigned long long>::max() / 3)
            saturated_ = true;
        else
            milestone_ *= 3;
        return true;
    }

    DigitStream x0_, x_;
    int la_ = 0, pending_ = -1;
    bool have_la_ = false, saturated_ = false;
    unsigned long long blocks_done_ = 0, milestone_ = 3;
};

class ComplementCursor : public DigitCursor {
  public:
    explicit ComplementCursor(DigitStream x) : x_(std::move(x)) {}
    int next() override { return x_.base() - 1 - x_.next(); }

  private:
    DigitStream x_;
};

// --- periodic words for rational targets ---

std::vector<int> frequency_word(const Rational& a, int i, int j) {
    BigInt l = num(a), m = den(a);
    std::vector<int> w;
    w.reserve(static_cast<std::size_t>(m));
    for (BigInt k = 0; k < l; ++k) w.push_back(i);
    for (BigInt k = l; k < m; ++k) w.push_back(j);
    return w;
}

std::vector<int> triple_word(const std::array<Rational, 3>& tau) {
    BigInt m = boost::multiprecision::lcm(
        boost::multiprecision::lcm(den(tau[0]), den(tau[1])), den(tau[2]));
    std::vector<int> w;
    w.reserve(static_cast<std::size_t>(m));
    for (int digit = 0; digit < 3; ++digit) {
        BigInt count = num(tau[digit]) * (m / den(tau[digit]));
        for (BigInt k = 0; k < count; ++k) w.push_back(digit);
    }
    return w;
}

std::unique_ptr<DigitCursor> make_cursor(const ConstructionSpec& spec);

} // namespace

DigitStream::DigitStream(ConstructionSpec spec, std::unique_ptr<DigitCursor> cursor)
    : spec_(std::move(spec)), cursor_(std::move(cursor)) {}

std::vector<int> DigitStream::take(std::size_t n) {
    std::vector<int> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(cursor_->next());
    return out;
}

DigitStream DigitStream::clone() const { return make_stream(spec_); }

namespace {

std::unique_ptr<DigitCursor> make_cursor(const ConstructionSpec& spec) {
    switch (spec.kind) {
    case ConstructionKind::Periodic:
        return std::make_unique<DigitStringCursor>(DigitString(spec.base, spec.preperiod, spec.digits));
    case ConstructionKind::Frequency: {
        if (spec.a == 0)
            return std::make_unique<DigitStringCursor>(DigitString(spec.base, {}, {spec.j}));
        if (spec.a == 1)
            return std::make_unique<DigitStringCursor>(DigitString(spec.base, {}, {spec.i}));
        return std::make_unique<DigitStringCursor>(
            DigitString(spec.base, {}, frequency_word(spec.a, spec.i, spec.j)));
    }
    case ConstructionKind::Beatty:
        return std::make_unique<BeattyCursor>(spec.beatty_a, spec.i, spec.j);
    case ConstructionKind::NoFrequency:
        return std::make_unique<NoFreqCursor>(spec.i, spec.j);
    case ConstructionKind::Witness: {
        std::vector<int> per =
            spec.tail_cyclic ? std::vector<int>{0, 1, 2} : std::vector<int>{spec.tail_digit};
        return std::make_unique<DigitStringCursor>(DigitString(spec.base, spec.digits, per));
    }
    case ConstructionKind::Triple: {
        if (spec.tau[0].is_rational() && spec.tau[1].is_rational() && spec.tau[2].is_rational()) {
            std::array<Rational, 3> rt{spec.tau[0].as_rational(), spec.tau[1].as_rational(),
                                       spec.tau[2].as_rational()};
            return std::make_unique<DigitStringCursor>(DigitString(3, {}, triple_word(rt)));
        }
        BigInt d = 0;
        for (const auto& t : spec.tau)
            if (t.d != 0) {
                if (d != 0 && d != t.d)
                    throw std::invalid_argument("triple_target: mixed radicands");
                d = t.d;
            }
        BigInt R = boost::multiprecision::lcm(
            boost::multiprecision::lcm(spec.tau[0].r, spec.tau[1].r), spec.tau[2].r);
        std::array<BigInt, 3> P, Q;
        for (int k = 0; k < 3; ++k) {
            BigInt f = R / spec.tau[k].r;
            P[k] = spec.tau[k].p * f;
            Q[k] = spec.tau[k].q * f;
        }
        return std::make_unique<LargestRemainderCursor>(std::move(P), std::move(Q), d, R);
    }
    case ConstructionKind::Interleave:
        return std::make_unique<InterleaveCursor>(make_stream(*spec.x), spec.filler);
    case ConstructionKind::Star:
        return std::make_unique<StarCursor>(make_stream(*spec.x0), make_stream(*spec.x));
    case ConstructionKind::Complement:
        return std::make_unique<ComplementCursor>(make_stream(*spec.x));
    }
    throw std::logic_error("make_cursor: unknown construction kind");
}

} // namespace

DigitStream make_stream(const ConstructionSpec& spec) {
    validate_spec(spec);
    return DigitStream(spec, make_cursor(spec));
}

DigitStream periodic_with_frequency(const Rational& a, int i, int j) {
    if (a < 0 || a > 1)
        throw std::domain_error("periodic_with_frequency: target outside [0,1]");
    check_digit(i, 3, "periodic_with_frequency");
    check_digit(j, 3, "periodic_with_frequency");
    if (i == j && a != 0 && a != 1)
        throw std::domain_error("periodic_with_frequency: digits must differ");
    ConstructionSpec spec;
    spec.kind = ConstructionKind::Frequency;
    spec.a = a;
    spec.i = i;
    spec.j = j;
    return make_stream(spec);
}

DigitStream beatty_construction(const QuadraticSurd& a, int i, int j) {
    if (a.is_rational())
        throw std::domain_error("beatty_construction: rational target, use the periodic form");
    if (a.cmp(Rational(0)) <= 0 || a.cmp(Rational(1)) >= 0)
        throw std::domain_error("beatty_construction: target outside (0,1)");
    check_digit(i, 3, "beatty_construction");
    check_digit(j, 3, "beatty_construction");
    if (i == j) throw std::domain_error("beatty_construction: digits must differ");
    ConstructionSpec spec;
    spec.kind = ConstructionKind::Beatty;
    spec.beatty_a = a;
    spec.i = i;
    spec.j = j;
    return make_stream(spec);
}

DigitStream no_frequency_example(int i, int j) {
    check_digit(i, 3, "no_frequency_example");
    check_digit(j, 3, "no_frequency_example");
    if (i == j) throw std::domain_error("no_frequency_example: digits must differ");
    ConstructionSpec spec;
    spec.kind = ConstructionKind::NoFrequency;
    spec.i = i;
    spec.j = j;
    return make_stream(spec);
}

DigitString discontinuity_witness(const std::vector<int>& x0_prefix, std::size_t n,
                                  WitnessTail tail, int tail_digit) {
    if (n > x0_prefix.size())
        throw std::domain_error("discontinuity_witness: n exceeds the given prefix");
    std::vector<int> pre(x0_prefix.begin(), x0_prefix.begin() + n);
    if (tail == WitnessTail::Cyclic012) return DigitString(3, std::move(pre), {0, 1, 2});
    check_digit(tail_digit, 3, "discontinuity_witness");
    return DigitString(3, std::move(pre), {tail_digit});
}

namespace {

ConstructionSpec triple_spec(const std::array<QuadraticSurd, 3>& tau) {
    QuadraticSurd sum = tau[0] + tau[1] + tau[2];
    if (sum.cmp(Rational(1)) != 0) throw std::domain_error("triple_target: frequencies must sum to 1");
    for (const auto& t : tau)
        if (t.sign() < 0 || t.cmp(Rational(1)) > 0)
            throw std::domain_error("triple_target: frequency outside [0,1]");
    ConstructionSpec spec;
    spec.kind = ConstructionKind::Triple;
    spec.tau = tau;
    return spec;
}

} // namespace

DigitStream triple_target(const std::array<Rational, 3>& tau) {
    return make_stream(triple_spec({QuadraticSurd::from_rational(tau[0]),
                                    QuadraticSurd::from_rational(tau[1]),
                                    QuadraticSurd::from_rational(tau[2])}));
}

DigitStream triple_target(const std::array<QuadraticSurd, 3>& tau) {
    return make_stream(triple_spec(tau));
}

DigitStream interleave_injection(DigitStream x, int filler, int base) {
    check_digit(filler, base, "interleave_injection");
    if (x.base() > base)
        throw std::domain_error("interleave_injection: inner digits exceed the output base");
    ConstructionSpec spec;
    spec.kind = ConstructionKind::Interleave;
    spec.base = base;
    spec.filler = filler;
    spec.x = std::make_shared<const ConstructionSpec>(x.spec());
    return DigitStream(spec, std::make_unique<InterleaveCursor>(std::move(x), filler));
}

DigitStream star_interleave(DigitStream x0, DigitStream x) {
    if (x0.base() != 3 || x.base() != 3)
        throw std::domain_error("star_interleave: both streams must be ternary");
    ConstructionSpec spec;
    spec.kind = ConstructionKind::Star;
    spec.x0 = std::make_shared<const ConstructionSpec>(x0.spec());
    spec.x = std::make_shared<const ConstructionSpec>(x.spec());
    return DigitStream(spec, std::make_unique<StarCursor>(std::move(x0), std::move(x)));
}

DigitStream complement_stream(DigitStream x) {
    ConstructionSpec spec;
    spec.kind = ConstructionKind::Complement;
    spec.base = x.base();
    spec.x = std::make_shared<const ConstructionSpec>(x.spec());
    return DigitStream(spec, std::make_unique<ComplementCursor>(std::move(x)));
}

NoFreqCounts no_frequency_counts(long long k) {
    if (k < 0) throw std::domain_error("no_frequency_counts: negative length");
    NoFreqCounts c;
    unsigned long long rem = static_cast<unsigned long long>(k), len = 1;
    while (rem > 0) {
        unsigned long long t = std::min(rem, len);
        c.n_i += static_cast<long long>(t);
        rem -= t;
        t = std::min(rem, len);
        c.n_j += static_cast<long long>(t);
        rem -= t;
        len <<= 1;
    }
    return c;
}

long long no_frequency_kn(int n) {
    if (n < 0 || n > 60) throw std::domain_error("no_frequency_kn: index out of range");
    return 3 * (1LL << n) - 2;
}

long long no_frequency_kpn(int n) {
    if (n < 0 || n > 60) throw std::domain_error("no_frequency_kpn: index out of range");
    return (1LL << (n + 2)) - 2;
}

std::vector<long long> block_boundaries(const std::vector<int>& x0_prefix,
                                        std::size_t max_blocks) {
    for (int d : x0_prefix) check_digit(d, 3, "block_boundaries");
    std::vector<long long> s;
    std::size_t pos = 0;
    while (s.size() < max_blocks && pos < x0_prefix.size()) {
        int expected = static_cast<int>(s.size() % 3);
        std::size_t p = pos;
        while (p < x0_prefix.size() && x0_prefix[p] == expected) ++p;
        if (p == x0_prefix.size()) break; // open run: block end not yet visible
        s.push_back(static_cast<long long>(p));
        pos = p;
    }
    return s;
}

} // namespace befrac
