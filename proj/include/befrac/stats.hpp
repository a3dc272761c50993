#pragma once

#include "befrac/stream.hpp"

#include <vector>

namespace befrac {

// Exact per-prefix digit statistics: counts N_i, relative frequencies N_i/k,
// and the running digit mean (1/k) * sum of digits.
struct PrefixStats {
    int base = 3;
    long long k = 0;
    std::vector<long long> counts;
    std::vector<Rational> rel_freq;
    Rational running_mean;
};

PrefixStats prefix_stats(const std::vector<int>& digits, int base);

// Incremental counter for streams; snapshot() materializes a PrefixStats.
class StatsAccumulator {
  public:
    explicit StatsAccumulator(int base);
    void push(int digit);
    long long depth() const { return k_; }
    const std::vector<long long>& counts() const { return counts_; }
    PrefixStats snapshot() const;

  private:
    int base_;
    long long k_ = 0;
    std::vector<long long> counts_;
};

// Exact frequencies m_i/m over the digits of one period.
struct FrequencyVector {
    int base = 3;
    std::vector<Rational> tau;
};

FrequencyVector frequency_from_period(const std::vector<int>& period, int base);

Rational mean_from_frequencies(const FrequencyVector& tau);

// v1, v2 from the ternary constraints v0+v1+v2 = 1, v1+2*v2 = r.
// Infeasible inputs are returned with feasible=false, never thrown.
struct FreqSystemSolution {
    Rational v1, v2;
    bool feasible = false;
};
FreqSystemSolution solve_freq_system(const Rational& v0, const Rational& r);

enum class FreqVerdict { ConvergentLike, Oscillating };

struct DigitDiagnosis {
    Rational min, max, last;
    Rational amplitude; // max - min across the ladder
    FreqVerdict verdict = FreqVerdict::ConvergentLike;
};

// Finite-depth heuristic: a digit is flagged OSCILLATING when its frequency
// still moves by more than 10/depth between the two deepest rungs, which is
// an order of magnitude above partial-period noise. Never a limit claim.
struct FrequencyDiagnosis {
    int base = 3;
    std::vector<long long> ladder;
    std::vector<std::vector<Rational>> freq_at; // [rung][digit]
    std::vector<DigitDiagnosis> per_digit;
    // ternary only: one digit's frequency cannot fail to converge alone,
    // so exactly one oscillating digit signals an internal inconsistency
    bool single_oscillation_warning = false;
};

FrequencyDiagnosis diagnose_frequencies(DigitStream& stream,
                                        const std::vector<long long>& ladder);

std::vector<long long> geometric_ladder(long long max_depth, int ratio = 3);
// k_n and k'_n subsequences up to index max_n, merged with geometric depths
std::vector<long long> kn_kpn_ladder(int max_n);

} // namespace befrac
