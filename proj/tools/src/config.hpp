#ifndef BURGERS_TOOL_CONFIG_HPP
#define BURGERS_TOOL_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "burgers/analysis.hpp"
#include "burgers/certificates.hpp"
#include "burgers/simulate.hpp"

namespace burgers::tool {

using nlohmann::json;

struct ConfigError : Error {
    using Error::Error;
};

/// Planner inputs carried alongside the run (also consumed when the
/// controller is "auto").
struct PlannerInputs {
    std::string target = "l2";  // "l2" | "h1"
    std::optional<double> xi;
    double H0 = 0.0;
    double H0_sup = 0.0;
};

struct FitOptions {
    std::optional<FitQuantity> quantity;  // absent -> per-system default
    double burn_in = -1.0;                // < 0 -> 10% of the trace span
    double floor = 1e-12;
    double tolerance = 0.1;
};

struct LoadedConfig {
    RunSpec spec;
    bool controller_auto = false;
    PlannerInputs planner;
    InequalityConstants constants;
    FitOptions fit;
    std::string name;
    std::optional<std::string> output;
    json canonical;  // the parsed document (nlohmann keeps object keys sorted)
};

LoadedConfig parse_run_config(const json& doc, const std::filesystem::path& base_dir);
LoadedConfig load_run_config(const std::filesystem::path& path);

/// FNV-1a 64-bit fingerprint of the canonical (sorted-key) serialization.
std::string fingerprint(const json& doc);

json make_manifest(const LoadedConfig& cfg, const json& run_record, double wall_time_s);

/// Recomputes the fingerprint of the config embedded in a manifest and
/// compares it with the recorded one.
bool manifest_roundtrip_ok(const json& manifest);

FitQuantity default_fit_quantity(SystemKind system, const std::string& target);
std::optional<Claim> default_claim(SystemKind system, const std::string& target);

}  // namespace burgers::tool

#endif
