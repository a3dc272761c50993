#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace befrac {

// Reproducibility contract: every sample uses its own mt19937_64 engine
// seeded by splitmix64 applied to (seed, sample index), so runs are
// bit-identical across machines and samples can be drawn in any order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
extern const char* const kRngDescription;

// depth i.i.d. digits with distribution tau (CDF inversion)
std::vector<int> sample_be_number(const std::vector<double>& tau, std::size_t depth,
                                  std::uint64_t seed);

struct BoxCountRow {
    int k = 0;
    long long occupied = 0;
    double ln_occupied = 0;
};

struct BoxCountRun {
    std::vector<double> tau;
    int base = 3;
    long long samples = 0;
    std::uint64_t seed = 0;
    std::vector<BoxCountRow> table;
    std::vector<int> fit_depths; // rungs actually used for the slope
    double slope = 0;
    double slope_stderr = 0;
    bool reliable = false;
    double oracle = 0;    // closed-form dimension of tau
    double abs_error = 0; // |slope - oracle|
};

// Counts distinct depth-k prefixes among M samples, then fits the slope of
// ln(occupied) against k ln 3. Depths at or past saturation (occupied >=
// M/10) are excluded; of the rest only the deepest four enter the fit, since
// shallow depths are resolution-limited (occupied = 3^k for any full-support
// tau) and bias the slope toward 1.
BoxCountRun box_count_estimate(const std::vector<double>& tau, long long samples,
                               const std::vector<int>& depths, std::uint64_t seed);

struct NormalityRun {
    long long samples = 0;
    long long depth = 0;
    std::uint64_t seed = 0;
    double band = 0; // 3-sigma half width sqrt(2/n) around 1/3
    long long within = 0;
    double fraction = 0;
    bool n_too_small = false; // band >= 2/3 cannot exclude anything
    std::array<double, 3> max_abs_dev{};
    std::array<double, 3> mean_abs_dev{};
};

NormalityRun borel_normality_check(long long samples, long long depth, std::uint64_t seed);

} // namespace befrac
