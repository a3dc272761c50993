#include "befrac/stats.hpp"

#include "befrac/constructions.hpp"

#include <algorithm>

namespace befrac {

StatsAccumulator::StatsAccumulator(int base) : base_(base), counts_(base, 0) {
    if (base < 2) throw std::domain_error("StatsAccumulator: base must be >= 2");
}

void StatsAccumulator::push(int digit) {
    if (digit < 0 || digit >= base_) throw std::domain_error("StatsAccumulator: digit out of range");
    ++counts_[digit];
    ++k_;
}

PrefixStats StatsAccumulator::snapshot() const {
    if (k_ == 0) throw std::domain_error("prefix statistics need a nonempty prefix");
    PrefixStats st;
    st.base = base_;
    st.k = k_;
    st.counts = counts_;
    st.rel_freq.reserve(base_);
    BigInt weighted = 0;
    for (int d = 0; d < base_; ++d) {
        st.rel_freq.emplace_back(BigInt(counts_[d]), BigInt(k_));
        weighted += BigInt(d) * counts_[d];
    }
    st.running_mean = Rational(weighted, BigInt(k_));
    return st;
}

PrefixStats prefix_stats(const std::vector<int>& digits, int base) {
    StatsAccumulator acc(base);
    for (int d : digits) acc.push(d);
    return acc.snapshot();
}

FrequencyVector frequency_from_period(const std::vector<int>& period, int base) {
    if (period.empty()) throw std::domain_error("frequency_from_period: empty period");
    PrefixStats st = prefix_stats(period, base);
    return FrequencyVector{base, st.rel_freq};
}

Rational mean_from_frequencies(const FrequencyVector& tau) {
    Rational sum = 0, mean = 0;
    for (std::size_t d = 0; d < tau.tau.size(); ++d) {
        sum += tau.tau[d];
        mean += Rational(BigInt(d)) * tau.tau[d];
    }
    if (sum != 1) throw std::domain_error("mean_from_frequencies: frequencies must sum to 1");
    return mean;
}

FreqSystemSolution solve_freq_system(const Rational& v0, const Rational& r) {
    FreqSystemSolution s;
    s.v2 = r - 1 + v0;
    s.v1 = Rational(2) - 2 * v0 - r;
    auto in01 = [](const Rational& x) { return x >= 0 && x <= 1; };
    s.feasible = in01(v0) && in01(s.v1) && in01(s.v2);
    return s;
}

FrequencyDiagnosis diagnose_frequencies(DigitStream& stream,
                                        const std::vector<long long>& ladder) {
    if (ladder.empty()) throw std::domain_error("diagnose_frequencies: empty ladder");
    for (std::size_t r = 1; r < ladder.size(); ++r)
        if (ladder[r] <= ladder[r - 1])
            throw std::domain_error("diagnose_frequencies: ladder must be strictly increasing");
    if (ladder.front() < 1) throw std::domain_error("diagnose_frequencies: depths start at 1");

    const int base = stream.base();
    FrequencyDiagnosis diag;
    diag.base = base;
    diag.ladder = ladder;

    StatsAccumulator acc(base);
    for (long long depth : ladder) {
        while (acc.depth() < depth) acc.push(stream.next());
        diag.freq_at.push_back(acc.snapshot().rel_freq);
    }

    diag.per_digit.resize(base);
    for (int d = 0; d < base; ++d) {
        DigitDiagnosis& dd = diag.per_digit[d];
        dd.min = dd.max = dd.last = diag.freq_at[0][d];
        for (const auto& rung : diag.freq_at) {
            dd.min = std::min(dd.min, rung[d]);
            dd.max = std::max(dd.max, rung[d]);
            dd.last = rung[d];
        }
        dd.amplitude = dd.max - dd.min;
        if (ladder.size() >= 2) {
            const Rational& deep = diag.freq_at[ladder.size() - 1][d];
            const Rational& prev = diag.freq_at[ladder.size() - 2][d];
            Rational move = deep > prev ? deep - prev : prev - deep;
            if (move > Rational(10, ladder[ladder.size() - 2]))
                dd.verdict = FreqVerdict::Oscillating;
        }
    }

    if (base == 3) {
        int oscillating = 0;
        for (const auto& dd : diag.per_digit)
            if (dd.verdict == FreqVerdict::Oscillating) ++oscillating;
        diag.single_oscillation_warning = oscillating == 1;
    }
    return diag;
}

std::vector<long long> geometric_ladder(long long max_depth, int ratio) {
    if (max_depth < 1 || ratio < 2) throw std::domain_error("geometric_ladder: bad arguments");
    std::vector<long long> out;
    for (long long d = 1; d <= max_depth; d *= ratio) {
        out.push_back(d);
        if (d > max_depth / ratio) break; // next step would overflow past max
    }
    return out;
}

std::vector<long long> kn_kpn_ladder(int max_n) {
    std::vector<long long> out;
    for (int n = 0; n <= max_n; ++n) {
        out.push_back(no_frequency_kn(n));
        out.push_back(no_frequency_kpn(n));
    }
    for (long long g : geometric_ladder(no_frequency_kpn(max_n))) out.push_back(g);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace befrac
