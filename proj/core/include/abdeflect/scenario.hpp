#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "abdeflect/errors.hpp"

namespace abdeflect {

/// A named experiment with a flat key -> value parameter map. Unknown keys
/// are rejected; every run embeds the fully resolved parameter set in its
/// report outputs.
struct Scenario {
    std::string name;
    std::map<std::string, double> params;  // overrides on the scenario defaults
    std::filesystem::path output_dir = ".";
};

struct OracleCheck {
    std::string name;
    double value = 0.0;      // measured discrepancy (or signed witness)
    double tolerance = 0.0;  // bound it must satisfy
    bool pass = false;
};

struct RunReport {
    std::string scenario;
    std::map<std::string, double> resolved_params;

    double theta_classical = 0.0;
    double theta_quantum = 0.0;
    double delta_y = 0.0;
    double flux = 0.0;
    std::string sign_verdict = "INDETERMINATE";  // OPPOSITE | SAME | INDETERMINATE

    std::vector<OracleCheck> oracles;
    std::vector<std::string> warnings;
    double wall_time_s = 0.0;

    bool all_pass() const;
    std::string to_text() const;
    std::string to_json() const;
};

/// Names of the available scenarios, in documentation order.
const std::vector<std::string>& scenario_names();

/// Fully resolved default parameter set for one scenario.
/// Throws UsageError for an unknown scenario name.
std::map<std::string, double> default_params(const std::string& scenario);

/// Executes the scenario pipeline, writes <name>.csv, <name>.report.txt and
/// <name>.summary.json under scenario.output_dir, and returns the report.
/// Deterministic for identical resolved parameters; the CSV bytes are
/// identical across runs. Throws UsageError for unknown names or keys.
RunReport run_scenario(const Scenario& scenario);

/// Plain-text key=value configuration file ('#' comments, blank lines ok).
std::map<std::string, double> parse_config_file(const std::filesystem::path& path);

namespace detail {
/// Sweep parallelism helper; thread count capped by ABDEFLECT_THREADS.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);
}  // namespace detail

}  // namespace abdeflect
