#ifndef BURGERS_SIMULATE_HPP
#define BURGERS_SIMULATE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "burgers/controllers.hpp"
#include "burgers/dynamics.hpp"
#include "burgers/trace.hpp"

namespace burgers {

enum class SystemKind {
    obe,                   // momentum/channel pair, single trajectory
    obe_controlled,        // master + modally fed-back follower
    bnn,                   // nonlocal equation, single trajectory
    bnn_controlled_modal,  // master + modal follower
    bnn_controlled_volume  // master + volume-element follower
};

std::string to_string(SystemKind s);
std::optional<SystemKind> system_from_string(const std::string& name);
bool is_controlled(SystemKind s);
bool is_obe(SystemKind s);

/// Initial data: a named preset scaled by amplitude, or an explicit profile.
/// `random` draws uniform coefficients on the first min(10, M/2) sine modes
/// from the run seed.
struct InitialSpec {
    enum class Preset { mode1, bump, random, sampled };
    Preset preset = Preset::mode1;
    double amplitude = 1.0;
    std::vector<double> profile;  // sampled preset
};

GridField make_initial(const InitialSpec& spec, GridSpec grid, std::uint64_t seed);

struct RunSpec {
    SystemKind system = SystemKind::obe;
    PhysicalParams params;
    GridSpec grid{64};
    StepperConfig stepper;
    SourceTerm source;

    InitialSpec initial;
    double U0 = 0.0;
    std::optional<InitialSpec> follower_perturbation;  // follower = master + perturbation
    double follower_U0_offset = 0.0;

    ControllerSpec controller;
    double horizon = 1.0;
    long long sample_stride = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SimulationResult {
    enum class Status { completed, diverged };
    Status status = Status::completed;
    Trace trace;
    double t_end = 0.0;
    std::string divergence_reason;

    // final states (master always, follower for controlled systems)
    std::vector<double> final_master;
    double final_master_U = 0.0;
    std::vector<double> final_follower;
    double final_follower_U = 0.0;

    bool source_l2_warning = false;  // running integral of ||h||^2 kept growing

    bool diverged() const { return status == Status::diverged; }
};

/// Runs the configured system. Controlled systems advance the uncontrolled
/// reference and the fed-back follower in lock-step; the controller reads the
/// same-time difference each step. Throws CflError if the initial state
/// already violates the step-size bound; mid-run violations and non-finite
/// states end the run with a truncated trace and status `diverged`.
SimulationResult simulate(const RunSpec& spec);

}  // namespace burgers

#endif
