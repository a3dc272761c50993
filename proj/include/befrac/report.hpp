#pragma once

#include "befrac/dimension.hpp"
#include "befrac/empirical.hpp"
#include "befrac/stats.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace befrac {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// doubles are reported at 15 significant digits; returns the double whose
// shortest round-trip representation carries at most those digits
double sig15(double x);
std::string sig15_str(double x);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

Json checks_json(const std::vector<Check>& checks);
bool all_pass(const std::vector<Check>& checks);

Json stats_json(const PrefixStats& st);
Json diagnosis_json(const FrequencyDiagnosis& diag);
Json dimension_json(const DimensionReport& rep);
Json boxcount_json(const BoxCountRun& run);
Json normality_json(const NormalityRun& run);

void sweep_csv(std::ostream& os, const std::vector<DimensionReport>& rows);
void boxcount_csv(std::ostream& os, const BoxCountRun& run);

std::string iso8601_utc_now();

} // namespace befrac
