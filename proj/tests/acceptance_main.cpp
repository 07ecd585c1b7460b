// Acceptance suite. Each numbered criterion runs end to end at its pinned
// tolerances and prints one pass/fail line; the process exits with the
// number of failed criteria. Criteria whose gain planning has no solution
// at the stated parameters are still attempted exactly as stated and fail
// with the analysis in the message.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include "burgers/analysis.hpp"
#include "burgers/simulate.hpp"

using namespace burgers;

namespace {

constexpr double kPi = std::numbers::pi;
const InequalityConstants kDefaults{};

struct Outcome {
    bool pass = false;
    std::string detail;
};

double wall_seconds(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunSpec sync_pair_spec(SystemKind system, const PhysicalParams& p, int points, double dt,
                       double horizon, const ControllerSpec& ctrl) {
    RunSpec spec;
    spec.system = system;
    spec.params = p;
    spec.grid = GridSpec(points);
    spec.stepper.dt = dt;
    spec.initial = {InitialSpec::Preset::bump, 0.5, {}};
    spec.U0 = 0.0;
    spec.follower_perturbation = InitialSpec{InitialSpec::Preset::random, 0.5, {}};
    spec.follower_U0_offset = 0.25;
    spec.controller = ctrl;
    spec.horizon = horizon;
    spec.sample_stride = 10;
    spec.seed = 42;
    return spec;
}

// --- criterion 1 ---------------------------------------------------------
Outcome criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = inequality_ensemble(/*seed=*/42, /*count=*/1000, /*max_mode=*/20,
                                         kDefaults, /*grid_points=*/512, /*slack=*/1e-8);
    const double wall = wall_seconds(t0);
    std::ostringstream os;
    os << rep.total_violations() << " violations over 1000 draws in " << wall << " s";
    double worst = 1e300;
    for (const auto& c : rep.checks) worst = std::min(worst, c.worst_margin);
    os << " (worst margin " << worst << ")";
    return {rep.total_violations() == 0 && wall < 10.0, os.str()};
}

// --- criteria 2 and 3 -----------------------------------------------------
Outcome obe_sync_criterion(const std::string& target) {
    const PhysicalParams p{1.0, 1.0, 1.0};
    PlanResult plan;
    try {
        plan = plan_gains_obe(p, kDefaults, target);
    } catch (const InfeasibleError& e) {
        std::ostringstream os;
        os << "planner infeasible at nu=1, R=1: " << e.what()
           << ". Analysis: the gain condition requires mu >= "
           << (target == "l2" ? "M5(mu)" : "Q0(mu)")
           << ", and M3 = 2 + 2*mu makes the bound grow like mu^2 (on the l2 side "
              "mu >= M3^2/(2nu) = 2(1+mu)^2 already has no solution); the printed "
              "sufficient conditions admit no gain at these parameters for any beta3. "
              "A fallback gain (mu=8, N=4) synchronizes at observed rate ~2.0 >= 0.9, "
              "see criterion 10's run.";
        return {false, os.str()};
    }
    // Reached only if the conditions were solvable: run the stated experiment.
    const auto spec = sync_pair_spec(SystemKind::obe_controlled, p, 256, 5e-4, 15.0,
                                     {ControllerFamily::modal, plan.mu,
                                      static_cast<int>(plan.n_modes)});
    const auto res = simulate(spec);
    if (res.diverged()) return {false, "run diverged: " + res.divergence_reason};
    const auto q = target == "l2" ? FitQuantity::sync_l2 : FitQuantity::sync_h1;
    const auto fit = fit_decay_rate(res.trace.t, quantity_series(res.trace, q), 2.0);
    const double certified = plan.certified_rate;
    std::ostringstream os;
    os << "mu=" << plan.mu << " N=" << plan.n_modes << " fitted " << fit.rate
       << " vs 0.9*" << certified;
    return {fit.rate >= 0.9 * certified, os.str()};
}

Outcome criterion2() { return obe_sync_criterion("l2"); }
Outcome criterion3() { return obe_sync_criterion("h1"); }

// --- criterion 4 ----------------------------------------------------------
Outcome criterion4() {
    const PhysicalParams p{0.5, 2.0, 1.0};
    const double xi = 5.0;
    PlanResult plan;
    try {
        plan = plan_gains_bnn(p, kDefaults, 0.0, 0.0, xi, PlanFamily::bnn_modal_l2);
    } catch (const InfeasibleError& e) {
        std::ostringstream os;
        os << "planner infeasible at nu=0.5, R=2, k=1, xi=5: " << e.what()
           << ". Analysis: the gain requirement sigma/2 + R + A0(mu) starts near 5e8 "
              "(A0 ~ H4^(2/3) with H4 ~ beta3^24 * H3^10 and beta3 = 2) and grows like "
              "mu^(10/3) through H3^10, so the iteration has no fixed point. At these "
              "parameters R < nu*lambda1, so the pair in fact synchronizes on its own "
              "at observed squared-norm rate ~5.87 (see criterion 6).";
        return {false, os.str()};
    }
    const double dt = std::min(2e-4, 0.4 / std::max(1.0, plan.mu));
    const auto spec = sync_pair_spec(SystemKind::bnn_controlled_modal, p, 256, dt, 6.0,
                                     {ControllerFamily::modal, plan.mu,
                                      static_cast<int>(plan.n_modes)});
    const auto res = simulate(spec);
    if (res.diverged()) return {false, "run diverged: " + res.divergence_reason};
    const auto fit =
        fit_decay_rate(res.trace.t, quantity_series(res.trace, FitQuantity::l2_z_sq), 1.0);
    std::ostringstream os;
    os << "mu=" << plan.mu << " N=" << plan.n_modes << " fitted " << fit.rate << " vs 0.9*" << xi;
    return {fit.rate >= 0.9 * xi, os.str()};
}

// --- criterion 5 ----------------------------------------------------------
Outcome criterion5() {
    const PhysicalParams p{0.5, 2.0, 1.0};
    const double xi = 5.0;
    PlanResult plan;
    try {
        plan = plan_gains_bnn(p, kDefaults, 0.0, 0.0, xi, PlanFamily::bnn_volume_l2);
    } catch (const Error& e) {
        return {false, std::string("planner failed: ") + e.what()};
    }
    const double target = plan.certified_rate;  // sigma + a0 = xi

    // resolvability: the partition needs at least 4 nodes per interval and the
    // explicit gain caps the step size at ~0.4/mu
    const long long min_points = 4 * plan.n_modes;
    const double dt = std::min(2e-4, 0.4 / plan.mu);
    const double projected_node_steps = static_cast<double>(min_points) * (6.0 / dt);
    if (min_points > (1 << 22) || projected_node_steps > 2e10) {
        std::ostringstream os;
        os << "planner output is sound arithmetic but unrunnable at desk scale: mu = "
           << plan.mu << ", N = " << plan.n_modes << " requires M >= " << min_points
           << " grid points and dt <= " << dt << ", i.e. ~" << projected_node_steps
           << " node-steps for the 6-time-unit window (>> 60 s). The closed-form H2 "
              "carries beta3^24*nu^-7 ~ 3.5e12, which inflates the volume gain to ~7.4e7. "
              "The criterion cannot complete as stated with the default constants.";
        return {false, os.str()};
    }
    const int points = static_cast<int>(std::max<long long>(256, min_points));
    const auto spec = sync_pair_spec(SystemKind::bnn_controlled_volume, p, points, dt, 6.0,
                                     {ControllerFamily::volume, plan.mu,
                                      static_cast<int>(plan.n_modes)});
    const auto res = simulate(spec);
    if (res.diverged()) return {false, "run diverged: " + res.divergence_reason};
    const auto fit =
        fit_decay_rate(res.trace.t, quantity_series(res.trace, FitQuantity::l2_z_sq), 1.0);
    std::ostringstream os;
    os << "mu=" << plan.mu << " N=" << plan.n_modes << " fitted " << fit.rate << " vs 0.9*"
       << target;
    return {fit.rate >= 0.9 * target, os.str()};
}

// --- criterion 6 ----------------------------------------------------------
Outcome criterion6() {
    const PhysicalParams p{0.5, 2.0, 1.0};
    const double xi = 5.0;
    const auto spec = sync_pair_spec(SystemKind::bnn_controlled_modal, p, 256, 2e-4, 6.0,
                                     {ControllerFamily::modal, 0.0, 1});
    const auto res = simulate(spec);
    if (res.diverged()) return {false, "run diverged: " + res.divergence_reason};
    double rate = 0.0;
    bool decays = true;
    try {
        const auto fit = fit_decay_rate(res.trace.t,
                                        quantity_series(res.trace, FitQuantity::l2_z_sq), 1.0);
        rate = fit.rate;
        decays = fit.rate > 0.05;
    } catch (const Error&) {
        decays = false;
    }
    const bool criterion_holds = !decays || rate < xi / 2.0;
    std::ostringstream os;
    os << "mu=0 fitted rate " << rate << " (expected < " << xi / 2.0 << " or non-decay)";
    if (!criterion_holds)
        os << ". Analysis: nu*lambda1 = 4.93 exceeds R = 2, so the uncontrolled pair "
              "self-synchronizes at squared-norm rate ~2*(nu*lambda1 - R) = 5.87; the "
              "stated contrast requires a supercritical R > nu*lambda1 (the sweep "
              "fixture at nu=0.1, R=2 shows the intended fail-then-pass behavior).";
    return {criterion_holds, os.str()};
}

// --- criterion 7 ----------------------------------------------------------
double mms_error(int points, double dt, double horizon, const GridField* reference,
                 std::vector<double>* final_state) {
    RunSpec spec;
    spec.system = SystemKind::bnn;
    spec.params = {1.0, 1.0, 1.0};
    spec.grid = GridSpec(points);
    spec.stepper.dt = dt;
    spec.source.kind = SourceTerm::Kind::mms;
    spec.initial.preset = InitialSpec::Preset::sampled;
    spec.initial.profile = mms_exact(0.0, spec.grid).values;
    spec.horizon = horizon;
    spec.sample_stride = 1 << 30;  // endpoints only
    const auto res = simulate(spec);
    if (res.diverged()) return -1.0;
    if (final_state) *final_state = res.final_master;
    GridField err(spec.grid);
    const GridField exact = mms_exact(horizon, spec.grid);
    for (int i = 0; i < err.size(); ++i) {
        const double ref = reference ? (*reference)[i] : exact[i];
        err[i] = res.final_master[static_cast<std::size_t>(i)] - ref;
    }
    return l2_norm(err);
}

double lstsq_slope(const std::vector<double>& logx, const std::vector<double>& logy) {
    const double n = static_cast<double>(logx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < logx.size(); ++i) {
        sx += logx[i];
        sy += logy[i];
        sxx += logx[i] * logx[i];
        sxy += logx[i] * logy[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome criterion7() {
    const double horizon = 0.24;  // divisible by every dt below
    std::vector<double> log_dx, log_err;
    std::ostringstream os;
    os << "spatial errors:";
    for (int points : {64, 128, 256, 512}) {
        const double err = mms_error(points, 1e-5, horizon, nullptr, nullptr);
        if (err < 0.0) return {false, "spatial study diverged"};
        log_dx.push_back(std::log(1.0 / (points + 1)));
        log_err.push_back(std::log(err));
        os << " " << err;
    }
    const double spatial_order = lstsq_slope(log_dx, log_err);
    os << " -> order " << spatial_order;

    // temporal order against a fine-step reference on the same grid (the
    // spatial floor would otherwise mask the slope)
    std::vector<double> ref_state;
    if (mms_error(512, 1e-5, horizon, nullptr, &ref_state) < 0.0)
        return {false, "temporal reference diverged"};
    const GridField ref(GridSpec(512), ref_state);
    std::vector<double> log_dt, log_terr;
    os << "; temporal errors:";
    for (double dt : {4e-3, 2e-3, 1e-3}) {
        const double err = mms_error(512, dt, horizon, &ref, nullptr);
        if (err < 0.0) return {false, "temporal study diverged"};
        log_dt.push_back(std::log(dt));
        log_terr.push_back(std::log(err));
        os << " " << err;
    }
    const double temporal_order = lstsq_slope(log_dt, log_terr);
    os << " -> order " << temporal_order;

    const bool pass = spatial_order > 1.8 && spatial_order < 2.2 && temporal_order >= 1.5;
    return {pass, os.str()};
}

// --- criterion 8 ----------------------------------------------------------
Outcome criterion8() {
    struct Case {
        const char* label;
        SystemKind system;
        ControllerSpec ctrl;
    };
    const std::vector<Case> cases = {
        {"obe pair", SystemKind::obe_controlled, {ControllerFamily::none, 0.0, 1}},
        {"obe modal", SystemKind::obe_controlled, {ControllerFamily::modal, 5.0, 3}},
        {"bnn pair", SystemKind::bnn_controlled_modal, {ControllerFamily::none, 0.0, 1}},
        {"bnn modal", SystemKind::bnn_controlled_modal, {ControllerFamily::modal, 5.0, 3}},
        {"bnn volume", SystemKind::bnn_controlled_volume, {ControllerFamily::volume, 5.0, 4}},
    };
    std::ostringstream os;
    bool pass = true;
    for (const auto& c : cases) {
        RunSpec spec;
        spec.system = c.system;
        spec.params = {1.0, 1.0, 1.0};
        spec.grid = GridSpec(128);
        spec.stepper.dt = 2e-4;
        spec.initial = {InitialSpec::Preset::bump, 0.5, {}};
        spec.U0 = 0.4;
        spec.controller = c.ctrl;  // identical master/follower data: no perturbation
        spec.horizon = 10.0;
        spec.sample_stride = 50;
        const auto res = simulate(spec);
        if (res.diverged()) return {false, std::string(c.label) + " diverged"};
        double worst = 0.0;
        for (double z : *res.trace.l2_z) worst = std::max(worst, z);
        os << c.label << " max|z|=" << worst << "; ";
        pass = pass && worst <= 1e-10;
    }
    return {pass, os.str()};
}

// --- criterion 9 ----------------------------------------------------------
Outcome criterion9() {
    const double xi = 10.5;  // above lambda1*nu/2 across the grid
    std::ostringstream os;
    int volume_ok = 0, modal_ok = 0, obe_ok = 0, infeasible = 0;
    for (double nu : {0.2, 0.65, 1.1, 1.55, 2.0}) {
        double prev_mu = -1.0;
        long long prev_n = -1;
        for (double R : {0.5, 1.375, 2.25, 3.125, 4.0}) {
            const PhysicalParams p{nu, R, 1.0};
            const auto plan = plan_gains_bnn(p, kDefaults, 0.0, 0.0, xi,
                                             PlanFamily::bnn_volume_l2);
            const auto replay =
                bnn_ledger(p, kDefaults, 0.0, 0.0, plan.mu, plan.n_modes, xi);
            if (!replay.all_satisfied(claim_conditions(PlanFamily::bnn_volume_l2)))
                return {false, "volume replay failed at nu=" + std::to_string(nu) +
                                   " R=" + std::to_string(R)};
            if (plan.mu < prev_mu || plan.n_modes < prev_n)
                return {false, "volume monotonicity in R failed at nu=" + std::to_string(nu)};
            prev_mu = plan.mu;
            prev_n = plan.n_modes;
            ++volume_ok;

            // the modal and momentum/channel planners are attempted everywhere;
            // every success must replay closed, failures are the documented
            // infeasibility error
            try {
                const auto m = plan_gains_bnn(p, kDefaults, 0.0, 0.0, xi,
                                              PlanFamily::bnn_modal_l2);
                if (!m.ledger.all_satisfied(claim_conditions(PlanFamily::bnn_modal_l2)))
                    return {false, "modal replay failed"};
                ++modal_ok;
            } catch (const InfeasibleError&) {
                ++infeasible;
            }
            try {
                const auto o = plan_gains_obe(p, kDefaults, "l2");
                if (!o.ledger.all_satisfied(claim_conditions(PlanFamily::obe_l2)))
                    return {false, "obe replay failed"};
                ++obe_ok;
            } catch (const InfeasibleError&) {
                ++infeasible;
            }
        }
    }
    os << "volume plans closed at all " << volume_ok << " grid points, monotone in R; "
       << modal_ok << " modal and " << obe_ok
       << " momentum/channel plans feasible (each replayed closed), " << infeasible
       << " infeasible by the documented error";
    return {true, os.str()};
}

// --- criterion 10 ---------------------------------------------------------
Outcome criterion10() {
    // The criterion-2 configuration; its planner is infeasible (criterion 2),
    // so the reproducibility contract is exercised at a fixed fallback gain.
    const auto spec = sync_pair_spec(SystemKind::obe_controlled, {1.0, 1.0, 1.0}, 256, 5e-4,
                                     15.0, {ControllerFamily::modal, 8.0, 4});
    const auto a = simulate(spec);
    const auto b = simulate(spec);
    if (a.diverged() || b.diverged()) return {false, "run diverged"};
    std::ostringstream csv_a, csv_b;
    write_csv(a.trace, csv_a);
    write_csv(b.trace, csv_b);
    const bool identical = csv_a.str() == csv_b.str();
    std::ostringstream os;
    os << "two runs, " << a.trace.rows() << " samples each, traces "
       << (identical ? "bit-identical" : "DIFFER") << " (fallback gain mu=8, N=4; the "
       << "planner itself is infeasible at nu=1, R=1, see criterion 2)";
    return {identical, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},  {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10},
    };
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& [number, fn] : criteria) {
        if (!wanted.empty() &&
            std::find(wanted.begin(), wanted.end(), number) == wanted.end())
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = fn();
        } catch (const std::exception& e) {
            outcome = {false, std::string("unexpected error: ") + e.what()};
        }
        const double wall = wall_seconds(t0);
        std::printf("[%s] criterion %2d (%.1f s): %s\n", outcome.pass ? "PASS" : "FAIL", number,
                    wall, outcome.detail.c_str());
        if (!outcome.pass) ++failures;
    }
    return failures;
}
