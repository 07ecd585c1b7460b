#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace burgers::tool;

    CLI::App app{
        "burgers-stab: simulator and gain-certificate planner for feedback-stabilized "
        "Burgers-type systems"};
    app.require_subcommand(1);

    // run
    std::string run_config;
    std::string run_out;
    auto* run = app.add_subcommand("run", "integrate a configured system and write artifacts");
    run->add_option("config", run_config, "JSON run configuration")->required();
    run->add_option("--out", run_out, "output directory (overrides the config)");

    // plan
    PlanOptions plan;
    auto* planc = app.add_subcommand("plan", "solve the gain conditions for (mu, N)");
    planc->add_option("--family", plan.family,
                      "obe-l2|obe-h1|bnn-modal-l2|bnn-modal-h1|bnn-volume-l2")
        ->required();
    planc->add_option("--nu", plan.nu, "viscosity")->required();
    planc->add_option("--R", plan.R, "pressure constant")->required();
    planc->add_option("--k", plan.k, "nonlocal coefficient");
    double plan_xi = 0.0, plan_mu = 0.0;
    auto* xi_opt = planc->add_option("--xi", plan_xi, "requested decay exponent (nonlocal families)");
    planc->add_option("--H0", plan.H0, "time integral of ||h||^2");
    planc->add_option("--H0-sup", plan.H0_sup, "sup in time of ||h||^2");
    auto* mu_opt = planc->add_option("--mu", plan_mu, "pin the gain; derive N and margins only");
    planc->add_option("--beta3", plan.constants.beta3, "L3 gradient interpolation constant");
    planc->add_option("--beta4", plan.constants.beta4, "L4 interpolation constant");
    planc->add_option("--c0", plan.constants.c0, "sup-norm constant");
    std::string plan_out;
    planc->add_option("--out", plan_out, "also write the report to a file");

    // sweep
    std::string sweep_file, sweep_out;
    int sweep_jobs = 1;
    auto* sweep = app.add_subcommand("sweep", "run a cartesian product of configurations");
    sweep->add_option("sweepfile", sweep_file, "JSON sweep description")->required();
    sweep->add_option("--jobs,-j", sweep_jobs, "parallel runs");
    sweep->add_option("--out", sweep_out, "output root");

    // verify-inequalities
    VerifyOptions verify;
    long long verify_seed = 42;
    auto* ver = app.add_subcommand("verify-inequalities",
                                   "check the functional inequalities on a random ensemble");
    ver->add_option("--seed", verify_seed, "RNG seed");
    ver->add_option("--count", verify.count, "ensemble size");
    ver->add_option("--max-mode", verify.max_mode, "highest sine mode");
    ver->add_option("--grid", verify.grid_points, "interior grid points");
    ver->add_option("--beta4", verify.constants.beta4, "L4 interpolation constant");
    ver->add_option("--c0", verify.constants.c0, "sup-norm constant");

    // fit-rate
    FitOptionsCli fit;
    double fit_certified = 0.0;
    auto* fitc = app.add_subcommand("fit-rate", "fit a decay rate on an existing trace CSV");
    fitc->add_option("trace", fit.csv_path, "trace.csv from a run")->required();
    fitc->add_option("--quantity", fit.quantity, "auto|l2_v2|l2_z2|h1_z2|sync-l2|sync-h1");
    fitc->add_option("--burn-in", fit.burn_in, "fit window start (default: 10% of the span)");
    fitc->add_option("--floor", fit.floor, "stop the window at the first sample below this");
    auto* cert_opt = fitc->add_option("--certified", fit_certified, "compare against this rate");
    fitc->add_option("--tolerance", fit.tolerance, "relative shortfall allowed by the verdict");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return cmd_run(run_config, run_out.empty() ? std::nullopt
                                                   : std::optional<std::string>(run_out));
    if (planc->parsed()) {
        if (*xi_opt) plan.xi = plan_xi;
        if (*mu_opt) plan.mu = plan_mu;
        if (!plan_out.empty()) plan.out_file = plan_out;
        return cmd_plan(plan);
    }
    if (sweep->parsed())
        return cmd_sweep(sweep_file, sweep_jobs,
                         sweep_out.empty() ? std::nullopt : std::optional<std::string>(sweep_out));
    if (ver->parsed()) {
        verify.seed = static_cast<std::uint64_t>(verify_seed);
        return cmd_verify(verify);
    }
    if (fitc->parsed()) {
        if (*cert_opt) fit.certified = fit_certified;
        return cmd_fit(fit);
    }
    return 0;
}
