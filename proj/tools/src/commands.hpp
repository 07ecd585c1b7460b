#ifndef BURGERS_TOOL_COMMANDS_HPP
#define BURGERS_TOOL_COMMANDS_HPP

#include <optional>
#include <string>

#include "config.hpp"

namespace burgers::tool {

// process exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitDivergence = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitInequalityViolation = 4;

/// Resolves the output directory: absolute paths win; relative paths are
/// rooted at $BURGERS_STAB_OUT when set, else the working directory.
std::filesystem::path resolve_out_dir(const std::string& requested);

struct RunArtifacts {
    int exit_code = kExitOk;
    json record;
    std::filesystem::path dir;
};

/// Executes one configured run and writes trace.csv, ledger.txt (when a
/// certificate applies) and manifest.json into `out_dir`.
RunArtifacts run_one(const LoadedConfig& cfg, const std::filesystem::path& out_dir,
                     bool quiet = false);

int cmd_run(const std::string& config_path, const std::optional<std::string>& out_override);

struct PlanOptions {
    std::string family;  // obe-l2 | obe-h1 | bnn-modal-l2 | bnn-modal-h1 | bnn-volume-l2
    double nu = 1.0;
    double R = 1.0;
    double k = 1.0;
    std::optional<double> xi;
    double H0 = 0.0;
    double H0_sup = 0.0;
    std::optional<double> mu;  // pin the gain and derive N only
    InequalityConstants constants;
    std::optional<std::string> out_file;
};

int cmd_plan(const PlanOptions& opts);

int cmd_sweep(const std::string& sweep_path, int jobs,
              const std::optional<std::string>& out_override);

struct VerifyOptions {
    std::uint64_t seed = 42;
    int count = 1000;
    int max_mode = 20;
    int grid_points = 512;
    InequalityConstants constants;
};

int cmd_verify(const VerifyOptions& opts);

struct FitOptionsCli {
    std::string csv_path;
    std::string quantity = "auto";
    double burn_in = -1.0;
    double floor = 1e-12;
    std::optional<double> certified;
    double tolerance = 0.1;
};

int cmd_fit(const FitOptionsCli& opts);

}  // namespace burgers::tool

#endif
