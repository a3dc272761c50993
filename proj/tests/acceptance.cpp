// Acceptance runner: each criterion prints exactly one PASS/FAIL line with
// its runtime; the process exits nonzero if any criterion fails. argv[1] is
// the CLI binary, exercised directly for the first criterion.
#include "befrac/constructions.hpp"
#include "befrac/digits.hpp"
#include "befrac/dimension.hpp"
#include "befrac/empirical.hpp"
#include "befrac/stats.hpp"
#include "befrac/surd.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace befrac;

namespace {

int g_failed = 0;

// budget_s <= 0 means untimed; otherwise exceeding the budget is a failure
void criterion(int idx, const std::string& name, double budget_s,
               const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::cout << "  (exception: " << e.what() << ")\n";
        ok = false;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && secs >= budget_s) ok = false;
    if (!ok) ++g_failed;
    std::printf("%s  %2d  %-68s  [%6.2fs]\n", ok ? "PASS" : "FAIL", idx, name.c_str(), secs);
    std::fflush(stdout);
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& cmd) {
    RunResult r;
    FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!p) return r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const double kGridStep = 0.05; // shared a-grid 0.05 .. 1.95

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli>\n";
        return 1;
    }
    const std::string cli = std::string("\"") + argv[1] + "\"";

    criterion(1, "a=1: CLI closed form and numeric value both 1 within 1e-9", 1.0, [&] {
        auto r = run_cli(cli + " dimension --a 1 --json --no-timestamp");
        if (r.exit_code != 0) return false;
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        if (j.is_discarded()) return false;
        double closed = j["result"]["closed_form"]["value"].get<double>();
        double numeric = j["result"]["numeric"]["value"].get<double>();
        return std::abs(closed - 1.0) <= 1e-9 && std::abs(numeric - 1.0) <= 1e-9;
    });

    criterion(2, "a-grid: closed vs optimizer 1e-8, maximizer location 1e-6", 5.0, [&] {
                  for (int u = 1; u <= 39; ++u) {
                      double a = kGridStep * u;
                      auto closed = ka_dimension_closed_form(a);
                      auto numeric = ka_dimension_numeric(a);
                      if (std::abs(closed.closed_form - numeric.numeric_max) > 1e-8) return false;
                      if (std::abs(numeric.x_numeric - closed.x1) > 1e-6) return false;
                  }
                  return true;
              });

    criterion(3, "a-grid: dimension is symmetric about a=1 within 1e-12", 0, [&] {
        for (int u = 1; u <= 39; ++u) {
            double a = kGridStep * u;
            double ya = ka_dimension_closed_form(a).closed_form;
            double yb = ka_dimension_closed_form(2.0 - a).closed_form;
            if (std::abs(ya - yb) > 1e-12) return false;
        }
        return true;
    });

    criterion(4, "analytic slope matches central differences (1e-5); zero at x1 (1e-9)", 0, [&] {
        const double h = 1e-6;
        for (int ui = 0; ui < 10; ++ui) {
            double a = 0.1 + 1.8 * ui / 9.0;
            auto rep = ka_dimension_closed_form(a);
            double margin = 0.15 * (rep.hi - rep.lo);
            for (int vi = 0; vi < 10; ++vi) {
                double x = rep.lo + margin +
                           (rep.hi - rep.lo - 2 * margin) * vi / 9.0;
                double fd = (ka_objective(a, x + h) - ka_objective(a, x - h)) / (2 * h);
                if (std::abs(fd - derivative_check(a, x)) > 1e-5) return false;
            }
        }
        for (int u = 1; u <= 39; ++u) {
            double a = kGridStep * u;
            auto rep = ka_dimension_closed_form(a);
            if (std::abs(derivative_check(a, rep.x1)) > 1e-9) return false;
        }
        return true;
    });

    criterion(5, "floor-sequence counts exact to n=1e5 for both irrational targets", 10.0, [&] {
        for (const char* text : {"sqrt(2)/2", "(sqrt(5)-1)/2"}) {
            QuadraticSurd a = parse_surd(text);
            DigitStream stream = beatty_construction(a, 1, 0);
            long long count = 0;
            for (long long n = 1; n <= 100000; ++n) {
                if (stream.next() == 1) ++count;
                if (a.floor_times(BigInt(n)) != count) return false;
                // count/n <= a < (count+1)/n, exact comparisons
                if (a.cmp(Rational(count, n)) < 0) return false;
                if (a.cmp(Rational(count + 1, n)) >= 0) return false;
            }
        }
        return true;
    });

    criterion(6, "alternating blocks: exact counts to n=25, gaps to 2/3 and 1/2 bounded", 0, [&] {
        for (int n = 0; n <= 25; ++n) {
            long long kn = no_frequency_kn(n), kpn = no_frequency_kpn(n);
            if (kn != (1LL << (n + 1)) + (1LL << n) - 2) return false;
            if (kpn != (1LL << (n + 2)) - 2) return false;
            long long want = (1LL << (n + 1)) - 1;
            if (no_frequency_counts(kn).n_i != want) return false;
            if (no_frequency_counts(kpn).n_i != want) return false;
            Rational bound(BigInt(4), pow_int(BigInt(2), static_cast<unsigned>(n)));
            if (abs(Rational(want, kn) - Rational(2, 3)) > bound) return false;
            if (abs(Rational(want, kpn) - Rational(1, 2)) > bound) return false;
        }
        // the closed-form counts describe the actual stream
        DigitStream stream = no_frequency_example(1, 0);
        long long limit = no_frequency_kpn(16), count = 0;
        for (long long k = 1; k <= limit; ++k) {
            if (stream.next() == 1) ++count;
            if (no_frequency_counts(k).n_i != count) return false;
        }
        return true;
    });

    criterion(7, "50 random periods: sandwich at every k<=1e4, exact full-period ratios", 0, [&] {
        std::mt19937 rng(20260816);
        std::uniform_int_distribution<int> len_of(1, 12), digit_of(0, 2);
        for (int trial = 0; trial < 50; ++trial) {
            int L = len_of(rng);
            std::vector<int> word(static_cast<std::size_t>(L));
            for (int& d : word) d = digit_of(rng);
            long long m[3] = {0, 0, 0};
            for (int d : word) ++m[d];
            long long N[3] = {0, 0, 0};
            for (long long k = 1; k <= 10000; ++k) {
                ++N[word[static_cast<std::size_t>((k - 1) % L)]];
                long long n = k / L;
                for (int i = 0; i < 3; ++i) {
                    if (m[i] == 0) {
                        if (N[i] != 0) return false;
                        continue;
                    }
                    if (n < 1) continue;
                    if (!(n * m[i] * k < N[i] * (n + 1) * L)) return false;
                    if (!(N[i] * n * L <= (n + 1) * m[i] * k)) return false;
                }
                if (k % L == 0)
                    for (int i = 0; i < 3; ++i)
                        if (N[i] != (k / L) * m[i]) return false;
            }
        }
        return true;
    });

    criterion(8, "running mean identity: 1000 ternary prefixes exact; two-digit bases", 0, [&] {
        std::mt19937 rng(8161);
        std::uniform_int_distribution<int> len_of(1, 400), digit_of(0, 2), bit_of(0, 1);
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<int> p(static_cast<std::size_t>(len_of(rng)));
            for (int& d : p) d = digit_of(rng);
            auto st = prefix_stats(p, 3);
            if (st.running_mean != st.rel_freq[1] + 2 * st.rel_freq[2]) return false;
        }
        for (int base : {4, 5, 7}) {
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<int> p(static_cast<std::size_t>(len_of(rng)));
                for (int& d : p) d = bit_of(rng);
                auto st = prefix_stats(p, base);
                if (st.running_mean != st.rel_freq[1]) return false;
            }
        }
        return true;
    });

    criterion(9, "box-count slope within 0.05 of the closed form for both targets", 60.0, [&] {
        std::vector<int> ladder{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        for (auto tau : {std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3},
                         std::vector<double>{0.2, 0.3, 0.5}}) {
            auto run = box_count_estimate(tau, 200000, ladder, 1);
            if (!run.reliable || run.abs_error > 0.05) return false;
        }
        return true;
    });

    criterion(10, "1000 uniform samples at depth 1e4: >=95% inside the 3-sigma band", 0, [&] {
        auto run = borel_normality_check(1000, 10000, 1);
        return !run.n_too_small && run.fraction >= 0.95;
    });

    criterion(11, "1000 random prefixes: complement value and count symmetry exact", 0, [&] {
        std::mt19937 rng(1101);
        std::uniform_int_distribution<int> len_of(1, 300), digit_of(0, 2);
        for (int trial = 0; trial < 1000; ++trial) {
            std::size_t L = static_cast<std::size_t>(len_of(rng));
            std::vector<int> p(L);
            for (int& d : p) d = digit_of(rng);
            auto q = complement(p, 3);
            Rational whole(BigInt(1), pow_int(BigInt(3), static_cast<unsigned>(L)));
            if (value_of_prefix(p, 3) + value_of_prefix(q, 3) != 1 - whole) return false;
            auto sp = prefix_stats(p, 3), sq = prefix_stats(q, 3);
            for (int i = 0; i < 3; ++i)
                if (sp.counts[static_cast<std::size_t>(i)] !=
                    sq.counts[static_cast<std::size_t>(2 - i)])
                    return false;
        }
        return true;
    });

    if (g_failed) {
        std::printf("%d of 11 criteria failed\n", g_failed);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}
