// End-to-end checks of the befrac CLI: exit codes, JSON determinism,
// digit-file round trips. argv[1] is the binary under test.
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
    if (!ok) ++g_failures;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// runs through the shell, stdout captured, stderr redirected to err_path
RunResult run(const std::string& cmd, const std::string& err_path = "/dev/null") {
    RunResult r;
    std::string full = cmd + " 2>" + err_path;
    FILE* p = popen(full.c_str(), "r");
    if (!p) {
        std::cerr << "popen failed for: " << full << "\n";
        std::exit(1);
    }
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_checks <path-to-cli>\n";
        return 1;
    }
    const std::string cli = std::string("\"") + argv[1] + "\"";
    const std::string tmp = "/tmp/befrac_cli_checks_" + std::to_string(getpid());
    const std::string err = tmp + ".err";

    // deterministic JSON: identical bytes across repeated runs
    {
        auto a = run(cli + " analyze 1/4 --json --no-timestamp");
        auto b = run(cli + " analyze 1/4 --json --no-timestamp");
        check(a.exit_code == 0, "analyze 1/4 exits 0");
        check(!a.out.empty() && a.out == b.out, "analyze JSON is byte-identical across runs");

        auto j = nlohmann::json::parse(a.out);
        check(j["schema_version"] == 1, "schema_version is 1");
        check(j["command"] == "analyze", "command field names the subcommand");
        check(j["ok"] == true, "analyze 1/4 reports ok");
        check(!j.contains("timestamp"), "--no-timestamp drops the timestamp");
        auto freq = j["result"]["period_freq"];
        check(freq[0] == "1/2", "nu_0(1/4) = 1/2");
        check(freq[1] == "0", "nu_1(1/4) = 0");
        check(freq[2] == "1/2", "nu_2(1/4) = 1/2");
        check(j["result"]["period_mean"] == "1", "running mean of 1/4 is exactly 1");
    }
    {
        auto a = run(cli + " dimension --a 0.5 --json --no-timestamp");
        auto b = run(cli + " dimension --a 0.5 --json --no-timestamp");
        check(a.exit_code == 0 && a.out == b.out, "dimension JSON is byte-identical across runs");
        auto j = nlohmann::json::parse(a.out);
        double closed = j["result"]["closed_form"]["value"].get<double>();
        double numeric = j["result"]["numeric"]["value"].get<double>();
        check(std::abs(closed - 0.8203391769145084) < 1e-12, "closed form at a=0.5");
        check(std::abs(closed - numeric) <= 1e-8, "closed and numeric agree at a=0.5");
    }
    {
        auto a = run(cli + " estimate --tau 1/3,1/3,1/3 --samples 2000 --kmax 5 --seed 7"
                           " --json --no-timestamp");
        auto b = run(cli + " estimate --tau 1/3,1/3,1/3 --samples 2000 --kmax 5 --seed 7"
                           " --json --no-timestamp");
        check(a.exit_code == 0, "uniform estimate with a small ladder exits 0");
        check(a.out == b.out, "estimate with a fixed seed is byte-identical across runs");
        auto j = nlohmann::json::parse(a.out);
        check(j["result"]["generator"].is_string(), "estimate reports its generator");
    }

    // usage errors: exit 2, diagnostic on stderr
    {
        struct Case {
            const char* what;
            std::string args;
        } cases[] = {
            {"malformed rational", " analyze 1/"},
            {"rational outside [0,1)", " analyze 7/4"},
            {"unknown construction", " analyze --spec bogus:1"},
            {"beatty with rational target", " construct --spec \"beatty:a=1/2,i=1,j=0\""},
            {"dimension a out of range", " dimension --a 2.5"},
            {"dimension with both a and tau", " dimension --a 1 --tau 1/3,1/3,1/3"},
            {"tau not summing to 1", " dimension --tau 1/2,1/2,1/2"},
            {"analyze with input and spec", " analyze 1/4 --spec nofreq:i=0,j=1"},
            {"unknown flag", " analyze 1/4 --frobnicate"},
        };
        for (const auto& c : cases) {
            auto r = run(cli + c.args, err);
            bool ok = r.exit_code == 2 && !slurp(err).empty();
            check(ok, std::string("exit 2 + stderr message: ") + c.what);
        }
    }

    // failed verification (not a usage error): exit 1, {"failures":[...]} on stderr
    {
        auto r = run(cli + " normality --samples 5 --depth 4 --json --no-timestamp", err);
        check(r.exit_code == 1, "normality at depth 4 exits 1 (band too wide)");
        auto j = nlohmann::json::parse(r.out);
        check(j["ok"] == false, "report carries ok=false");
        auto e = nlohmann::json::parse(slurp(err));
        bool named = false;
        for (const auto& f : e["failures"])
            if (f == "band_meaningful") named = true;
        check(named, "stderr failures array names the failed check");
    }

    // digit files round trip through construct + analyze
    {
        const std::string f = tmp + ".digits";
        auto w = run(cli + " construct --spec period:012 --depth 60 --out " + f +
                     " --json --no-timestamp");
        check(w.exit_code == 0, "construct period:012 exits 0");
        auto a = run(cli + " analyze " + f + " --json --no-timestamp");
        check(a.exit_code == 0, "analyze of the written digit file exits 0");
        auto j = nlohmann::json::parse(a.out);
        for (std::size_t d = 0; d < 3; ++d)
            check(j["result"]["period_freq"][d] == "1/3",
                  "digit " + std::to_string(d) + " of 012-repeat has frequency 1/3");
        std::remove(f.c_str());
    }
    {
        const std::string f = tmp + ".witness";
        auto w = run(cli + " construct --spec \"witness:prefix=0120,tail=2\" --depth 40 --out " + f);
        check(w.exit_code == 0, "construct witness exits 0");
        std::string body = slurp(f);
        check(body.find('|') != std::string::npos, "eventually periodic file uses pre|per form");
        auto a = run(cli + " analyze " + f + " --json --no-timestamp");
        auto j = nlohmann::json::parse(a.out);
        check(a.exit_code == 0 && j["ok"] == true, "witness file re-analyzes clean");
        std::remove(f.c_str());
    }

    // sweep CSV contract on stdout in text mode
    {
        auto r = run(cli + " sweep --step 0.05", err);
        check(r.exit_code == 0, "default sweep exits 0");
        std::istringstream lines(r.out);
        std::string l1, l2;
        std::getline(lines, l1);
        std::getline(lines, l2);
        check(l1 == "# schema_version=1", "sweep CSV starts with the schema comment");
        check(l2 == "a,t,x1,nu0,nu1,nu2,dim_closed,dim_numeric,abs_diff", "sweep CSV header");
        int rows = 0;
        for (std::string l; std::getline(lines, l);)
            if (!l.empty()) ++rows;
        check(rows == 41, "sweep 0..2 step 0.05 yields 41 rows");
        check(r.out.find("-0,") == std::string::npos &&
              r.out.find(",-0\n") == std::string::npos,
              "CSV never contains negative zero");
    }

    // box-count CSV file
    {
        const std::string f = tmp + ".csv";
        auto r = run(cli + " estimate --tau 1/3,1/3,1/3 --samples 2000 --kmax 5 --out " + f);
        check(r.exit_code == 0, "estimate --out exits 0");
        std::string body = slurp(f);
        check(body.rfind("# schema_version=1\nk,occupied,ln_occupied\n", 0) == 0,
              "box-count CSV schema line and header");
        std::remove(f.c_str());
    }

    std::remove(err.c_str());
    if (g_failures) {
        std::cout << g_failures << " cli check(s) failed\n";
        return 1;
    }
    std::cout << "all cli checks passed\n";
    return 0;
}
