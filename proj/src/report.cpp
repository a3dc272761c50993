#include "befrac/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <ostream>

namespace befrac {

double sig15(double x) {
    if (x == 0) return 0; // never emit -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return std::strtod(buf, nullptr);
}

std::string sig15_str(double x) {
    if (x == 0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

Json checks_json(const std::vector<Check>& checks) {
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json j;
        j["name"] = c.name;
        j["pass"] = c.pass;
        if (!c.detail.empty()) j["detail"] = c.detail;
        arr.push_back(std::move(j));
    }
    return arr;
}

bool all_pass(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

Json stats_json(const PrefixStats& st) {
    Json j;
    j["base"] = st.base;
    j["depth"] = st.k;
    j["counts"] = st.counts;
    Json freqs = Json::array();
    for (const auto& f : st.rel_freq) freqs.push_back(to_string(f));
    j["rel_freq"] = std::move(freqs);
    j["running_mean"] = to_string(st.running_mean);
    return j;
}

Json diagnosis_json(const FrequencyDiagnosis& diag) {
    Json j;
    j["base"] = diag.base;
    j["ladder"] = diag.ladder;
    Json rungs = Json::array();
    for (std::size_t r = 0; r < diag.ladder.size(); ++r) {
        Json rung;
        rung["depth"] = diag.ladder[r];
        Json freqs = Json::array();
        for (const auto& f : diag.freq_at[r]) freqs.push_back(to_string(f));
        rung["rel_freq"] = std::move(freqs);
        rungs.push_back(std::move(rung));
    }
    j["rel_freq_at"] = std::move(rungs);
    Json per_digit = Json::array();
    Json verdicts = Json::array();
    for (std::size_t d = 0; d < diag.per_digit.size(); ++d) {
        const auto& dd = diag.per_digit[d];
        const char* v =
            dd.verdict == FreqVerdict::Oscillating ? "OSCILLATING" : "CONVERGENT-LIKE";
        Json row;
        row["digit"] = d;
        row["min"] = to_string(dd.min);
        row["max"] = to_string(dd.max);
        row["last"] = to_string(dd.last);
        row["amplitude"] = to_string(dd.amplitude);
        row["verdict"] = v;
        per_digit.push_back(std::move(row));
        verdicts.push_back(v);
    }
    j["per_digit"] = std::move(per_digit);
    j["verdict"] = std::move(verdicts);
    j["single_oscillation_warning"] = diag.single_oscillation_warning;
    return j;
}

Json dimension_json(const DimensionReport& rep) {
    Json j;
    j["a"] = sig15(rep.a);
    j["t"] = sig15(rep.t);
    j["feasible"] = Json{{"lo", sig15(rep.lo)}, {"hi", sig15(rep.hi)}};
    j["closed_form"] = Json{{"x1", sig15(rep.x1)},
                            {"nu", Json::array({sig15(rep.nu0), sig15(rep.nu1), sig15(rep.nu2)})},
                            {"value", sig15(rep.closed_form)},
                            {"x2", sig15(rep.x2)},
                            {"x2_in_domain", rep.x2_in_domain}};
    j["numeric"] = Json{{"x", sig15(rep.x_numeric)},
                        {"value", sig15(rep.numeric_max)},
                        {"iterations", rep.iterations}};
    j["abs_diff"] = sig15(std::abs(rep.closed_form - rep.numeric_max));
    return j;
}

Json boxcount_json(const BoxCountRun& run) {
    Json j;
    Json tau = Json::array();
    for (double t : run.tau) tau.push_back(sig15(t));
    j["tau"] = std::move(tau);
    j["base"] = run.base;
    j["samples"] = run.samples;
    j["seed"] = run.seed;
    j["generator"] = kRngDescription;
    Json table = Json::array();
    for (const auto& row : run.table)
        table.push_back(Json{{"k", row.k},
                             {"occupied", row.occupied},
                             {"ln_occupied", sig15(row.ln_occupied)}});
    j["table"] = std::move(table);
    j["fit_depths"] = run.fit_depths;
    j["estimate"] = sig15(run.slope);
    j["slope_stderr"] = sig15(run.slope_stderr);
    j["reliable"] = run.reliable;
    j["oracle"] = sig15(run.oracle);
    j["abs_error"] = sig15(run.abs_error);
    return j;
}

Json normality_json(const NormalityRun& run) {
    Json j;
    j["samples"] = run.samples;
    j["depth"] = run.depth;
    j["seed"] = run.seed;
    j["generator"] = kRngDescription;
    j["band"] = sig15(run.band);
    j["within"] = run.within;
    j["fraction"] = sig15(run.fraction);
    j["n_too_small"] = run.n_too_small;
    j["max_abs_dev"] =
        Json::array({sig15(run.max_abs_dev[0]), sig15(run.max_abs_dev[1]), sig15(run.max_abs_dev[2])});
    j["mean_abs_dev"] = Json::array(
        {sig15(run.mean_abs_dev[0]), sig15(run.mean_abs_dev[1]), sig15(run.mean_abs_dev[2])});
    return j;
}

void sweep_csv(std::ostream& os, const std::vector<DimensionReport>& rows) {
    os << "# schema_version=" << kSchemaVersion << "\n";
    os << "a,t,x1,nu0,nu1,nu2,dim_closed,dim_numeric,abs_diff\n";
    for (const auto& r : rows) {
        os << sig15_str(r.a) << ',' << sig15_str(r.t) << ',' << sig15_str(r.x1) << ','
           << sig15_str(r.nu0) << ',' << sig15_str(r.nu1) << ',' << sig15_str(r.nu2) << ','
           << sig15_str(r.closed_form) << ',' << sig15_str(r.numeric_max) << ','
           << sig15_str(std::abs(r.closed_form - r.numeric_max)) << "\n";
    }
}

void boxcount_csv(std::ostream& os, const BoxCountRun& run) {
    os << "# schema_version=" << kSchemaVersion << "\n";
    os << "k,occupied,ln_occupied\n";
    for (const auto& row : run.table)
        os << row.k << ',' << row.occupied << ',' << sig15_str(row.ln_occupied) << "\n";
}

std::string iso8601_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace befrac
