#include "befrac/empirical.hpp"

#include "befrac/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace befrac {

const char* const kRngDescription = "mt19937_64, per-sample seeds via splitmix64";

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> cdf_of(const std::vector<double>& tau) {
    if (tau.size() < 2) throw std::domain_error("sampler: need at least two digit frequencies");
    double sum = 0;
    for (double t : tau) {
        if (!(t >= 0) || t > 1) throw std::domain_error("sampler: frequency outside [0,1]");
        sum += t;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::domain_error("sampler: frequencies must sum to 1");
    std::vector<double> cdf(tau.size());
    double acc = 0;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        acc += tau[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    return cdf;
}

int draw_digit(std::mt19937_64& rng, const std::vector<double>& cdf) {
    double u = uniform01(rng);
    for (std::size_t i = 0; i + 1 < cdf.size(); ++i)
        if (u < cdf[i]) return static_cast<int>(i);
    return static_cast<int>(cdf.size() - 1);
}

// OLS slope of y against x, plus the standard error of the slope
void fit_slope(const std::vector<double>& x, const std::vector<double>& y, double& slope,
               double& stderr_out) {
    std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    slope = sxy / sxx;
    if (n <= 2) {
        stderr_out = 0;
        return;
    }
    double rss = 0;
    double intercept = my - slope * mx;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - (intercept + slope * x[i]);
        rss += r * r;
    }
    stderr_out = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
}

std::vector<int> sample_be_number(const std::vector<double>& tau, std::size_t depth,
                                  std::uint64_t seed) {
    if (depth < 1) throw std::domain_error("sample_be_number: depth must be >= 1");
    auto cdf = cdf_of(tau);
    std::mt19937_64 rng(derive_seed(seed, 0));
    std::vector<int> out;
    out.reserve(depth);
    for (std::size_t k = 0; k < depth; ++k) out.push_back(draw_digit(rng, cdf));
    return out;
}

BoxCountRun box_count_estimate(const std::vector<double>& tau, long long samples,
                               const std::vector<int>& depths, std::uint64_t seed) {
    if (samples < 1) throw std::domain_error("box_count_estimate: need at least one sample");
    if (depths.empty()) throw std::domain_error("box_count_estimate: empty depth ladder");
    for (std::size_t i = 0; i < depths.size(); ++i) {
        if (depths[i] < 1 || (i > 0 && depths[i] <= depths[i - 1]))
            throw std::domain_error("box_count_estimate: ladder must be strictly increasing");
    }
    if (tau.size() != 3) throw std::domain_error("box_count_estimate: ternary only");
    const int k_max = depths.back();
    if (k_max > 13) throw std::domain_error("box_count_estimate: depth ladder capped at 13");

    auto cdf = cdf_of(tau);
    BoxCountRun run;
    run.tau = tau;
    run.samples = samples;
    run.seed = seed;

    // cylinder occupancy per requested depth, indexed by the base-3 prefix code
    std::vector<std::vector<char>> seen(depths.size());
    std::vector<long long> occupied(depths.size(), 0);
    long long size = 1;
    for (std::size_t di = 0, k = 1; di < depths.size(); ++k) {
        size *= 3;
        if (static_cast<int>(k) == depths[di]) {
            seen[di].assign(static_cast<std::size_t>(size), 0);
            ++di;
        }
    }

    for (long long m = 0; m < samples; ++m) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(m)));
        long long code = 0;
        std::size_t di = 0;
        for (int k = 1; k <= k_max && di < depths.size(); ++k) {
            code = code * 3 + draw_digit(rng, cdf);
            if (k == depths[di]) {
                char& cell = seen[di][static_cast<std::size_t>(code)];
                if (!cell) {
                    cell = 1;
                    ++occupied[di];
                }
                ++di;
            }
        }
    }

    run.table.reserve(depths.size());
    for (std::size_t di = 0; di < depths.size(); ++di)
        run.table.push_back({depths[di], occupied[di],
                             std::log(static_cast<double>(occupied[di]))});

    // pre-saturation rungs only, then the deepest four of them
    std::vector<std::size_t> eligible;
    for (std::size_t di = 0; di < depths.size(); ++di)
        if (occupied[di] < samples / 10) eligible.push_back(di);
    const std::size_t fit_window = 4;
    if (eligible.size() > fit_window)
        eligible.erase(eligible.begin(), eligible.end() - fit_window);

    run.oracle = be_dimension(tau, 3);
    if (eligible.size() < 2) {
        run.reliable = false;
        run.slope = 0;
        run.slope_stderr = 0;
        run.abs_error = std::abs(run.slope - run.oracle);
        return run;
    }
    std::vector<double> xs, ys;
    const double ln3 = std::log(3.0);
    for (std::size_t di : eligible) {
        run.fit_depths.push_back(depths[di]);
        xs.push_back(depths[di] * ln3);
        ys.push_back(run.table[di].ln_occupied);
    }
    fit_slope(xs, ys, run.slope, run.slope_stderr);
    run.reliable = true;
    run.abs_error = std::abs(run.slope - run.oracle);
    return run;
}

NormalityRun borel_normality_check(long long samples, long long depth, std::uint64_t seed) {
    if (samples < 1 || depth < 1)
        throw std::domain_error("borel_normality_check: samples and depth must be >= 1");
    NormalityRun run;
    run.samples = samples;
    run.depth = depth;
    run.seed = seed;
    run.band = std::sqrt(2.0 / static_cast<double>(depth));
    run.n_too_small = run.band >= 2.0 / 3.0;

    const std::vector<double> uniform{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    auto cdf = cdf_of(uniform);
    for (long long m = 0; m < samples; ++m) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(m)));
        long long counts[3] = {0, 0, 0};
        for (long long k = 0; k < depth; ++k) ++counts[draw_digit(rng, cdf)];
        bool inside = true;
        for (int d = 0; d < 3; ++d) {
            double dev =
                std::abs(static_cast<double>(counts[d]) / static_cast<double>(depth) - 1.0 / 3.0);
            run.max_abs_dev[d] = std::max(run.max_abs_dev[d], dev);
            run.mean_abs_dev[d] += dev;
            if (dev > run.band) inside = false;
        }
        if (inside) ++run.within;
    }
    for (int d = 0; d < 3; ++d) run.mean_abs_dev[d] /= static_cast<double>(samples);
    run.fraction = static_cast<double>(run.within) / static_cast<double>(samples);
    return run;
}

} // namespace befrac
