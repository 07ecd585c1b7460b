#include <benchmark/benchmark.h>

#include <cmath>

#include "burgers/analysis.hpp"
#include "burgers/simulate.hpp"

using namespace burgers;

namespace {

GridField test_field(GridSpec g) {
    GridField f(g);
    for (int i = 0; i < g.points; ++i) {
        const double x = g.node(i);
        f[i] = x * (1.0 - x) * (1.0 + 0.3 * std::sin(7.0 * 3.14159265 * x));
    }
    return f;
}

void BM_ModalFeedback(benchmark::State& state) {
    const GridSpec g(static_cast<int>(state.range(0)));
    const Feedback fb({ControllerFamily::modal, 2.0, 16}, g);
    const GridField z = test_field(g);
    for (auto _ : state) {
        auto out = fb(z);
        benchmark::DoNotOptimize(out.values.data());
    }
}
BENCHMARK(BM_ModalFeedback)->Arg(128)->Arg(256)->Arg(512);

void BM_VolumeFeedback(benchmark::State& state) {
    const GridSpec g(static_cast<int>(state.range(0)));
    const Feedback fb({ControllerFamily::volume, 2.0, 16}, g);
    const GridField z = test_field(g);
    for (auto _ : state) {
        auto out = fb(z);
        benchmark::DoNotOptimize(out.values.data());
    }
}
BENCHMARK(BM_VolumeFeedback)->Arg(128)->Arg(256)->Arg(512);

void BM_ObeStep(benchmark::State& state) {
    const GridSpec g(static_cast<int>(state.range(0)));
    const PhysicalParams p{1.0, 1.0, 1.0};
    StepperConfig cfg;
    cfg.dt = 1e-4;
    ImexIntegrator stepper(g, p.nu, cfg);
    GridField v = test_field(g);
    double U = 0.3;
    for (auto _ : state) {
        const GridField adv = advection_dxsq(v);
        GridField explicit_part(g);
        for (int i = 0; i < g.points; ++i) explicit_part[i] = U * v[i] - adv[i];
        const double dU = p.R - p.nu * U - l2_norm_sq(v);
        stepper.step(v, U, explicit_part, dU);
        benchmark::DoNotOptimize(v.values.data());
    }
}
BENCHMARK(BM_ObeStep)->Arg(128)->Arg(256)->Arg(512);

void BM_ControlledPairSecond(benchmark::State& state) {
    RunSpec spec;
    spec.system = SystemKind::bnn_controlled_modal;
    spec.params = {1.0, 1.0, 1.0};
    spec.grid = GridSpec(256);
    spec.stepper.dt = 1e-3;
    spec.initial = {InitialSpec::Preset::bump, 0.5, {}};
    spec.follower_perturbation = InitialSpec{InitialSpec::Preset::random, 0.5, {}};
    spec.controller = {ControllerFamily::modal, 5.0, 8};
    spec.horizon = 1.0;
    spec.sample_stride = 100;
    spec.seed = 1;
    for (auto _ : state) {
        auto res = simulate(spec);
        benchmark::DoNotOptimize(res.trace.t.data());
    }
}
BENCHMARK(BM_ControlledPairSecond)->Unit(benchmark::kMillisecond);

void BM_ObeLedger(benchmark::State& state) {
    const PhysicalParams p{1.0, 1.0, 1.0};
    const InequalityConstants c;
    for (auto _ : state) {
        auto led = obe_ledger(p, c, 3.0, 5);
        benchmark::DoNotOptimize(led.M5);
    }
}
BENCHMARK(BM_ObeLedger);

void BM_VolumePlan(benchmark::State& state) {
    const PhysicalParams p{0.5, 2.0, 1.0};
    const InequalityConstants c;
    for (auto _ : state) {
        auto plan = plan_gains_bnn(p, c, 0.0, 0.0, 5.0, PlanFamily::bnn_volume_l2);
        benchmark::DoNotOptimize(plan.mu);
    }
}
BENCHMARK(BM_VolumePlan);

void BM_RateFit(benchmark::State& state) {
    std::vector<double> ts, ys;
    for (int i = 0; i < 20000; ++i) {
        ts.push_back(1e-3 * i);
        ys.push_back(5.0 * std::exp(-2.0 * 1e-3 * i) + 1e-13);
    }
    for (auto _ : state) {
        auto fit = fit_decay_rate(ts, ys, 0.5);
        benchmark::DoNotOptimize(fit.rate);
    }
}
BENCHMARK(BM_RateFit);

void BM_InequalityDraws(benchmark::State& state) {
    const InequalityConstants c;
    for (auto _ : state) {
        auto rep = inequality_ensemble(42, static_cast<int>(state.range(0)), 20, c, 512);
        benchmark::DoNotOptimize(rep.checks.data());
    }
}
BENCHMARK(BM_InequalityDraws)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
