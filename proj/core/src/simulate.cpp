#include "burgers/simulate.hpp"

#include <cmath>
#include <random>

#include "burgers/spectral.hpp"

namespace burgers {

std::string to_string(SystemKind s) {
    switch (s) {
        case SystemKind::obe: return "obe";
        case SystemKind::obe_controlled: return "obe-controlled";
        case SystemKind::bnn: return "bnn";
        case SystemKind::bnn_controlled_modal: return "bnn-controlled-modal";
        case SystemKind::bnn_controlled_volume: return "bnn-controlled-volume";
    }
    return "?";
}

std::optional<SystemKind> system_from_string(const std::string& name) {
    for (auto s : {SystemKind::obe, SystemKind::obe_controlled, SystemKind::bnn,
                   SystemKind::bnn_controlled_modal, SystemKind::bnn_controlled_volume})
        if (to_string(s) == name) return s;
    return std::nullopt;
}

bool is_controlled(SystemKind s) {
    return s == SystemKind::obe_controlled || s == SystemKind::bnn_controlled_modal ||
           s == SystemKind::bnn_controlled_volume;
}

bool is_obe(SystemKind s) {
    return s == SystemKind::obe || s == SystemKind::obe_controlled;
}

namespace {

double uniform_pm1(std::mt19937_64& eng) {
    // fixed 53-bit mapping; std::uniform_real_distribution is
    // implementation-defined and would break bit-reproducibility
    const double u01 = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    return 2.0 * u01 - 1.0;
}

}  // namespace

GridField make_initial(const InitialSpec& spec, GridSpec grid, std::uint64_t seed) {
    switch (spec.preset) {
        case InitialSpec::Preset::mode1: {
            GridField f = eigenpair(1, grid).eigenfunction;
            for (int i = 0; i < f.size(); ++i) f[i] *= spec.amplitude;
            return f;
        }
        case InitialSpec::Preset::bump: {
            GridField f(grid);
            for (int i = 0; i < f.size(); ++i) {
                const double x = grid.node(i);
                f[i] = spec.amplitude * x * (1.0 - x);
            }
            return f;
        }
        case InitialSpec::Preset::random: {
            std::mt19937_64 eng(seed);
            const int n_modes = std::min(10, grid.points / 2);
            std::vector<double> c(static_cast<std::size_t>(n_modes));
            for (auto& ck : c) ck = spec.amplitude * uniform_pm1(eng);
            return modal_reconstruct(c, grid);
        }
        case InitialSpec::Preset::sampled:
            if (static_cast<int>(spec.profile.size()) != grid.points)
                throw ShapeError("initial data: sampled profile has " +
                                 std::to_string(spec.profile.size()) + " values for a grid of " +
                                 std::to_string(grid.points));
            return GridField(grid, spec.profile);
    }
    return GridField(grid);
}

void RunSpec::validate() const {
    if (!(horizon > 0.0)) throw std::invalid_argument("RunSpec: horizon must be > 0");
    if (sample_stride < 1) throw std::invalid_argument("RunSpec: sample_stride must be >= 1");
    stepper.validate();
    const bool nonlocal = !is_obe(system);
    params.validate(nonlocal);
    controller.validate();
    switch (system) {
        case SystemKind::obe:
        case SystemKind::bnn:
            if (controller.family != ControllerFamily::none)
                throw std::invalid_argument("RunSpec: uncontrolled system with a controller");
            break;
        case SystemKind::obe_controlled:
        case SystemKind::bnn_controlled_modal:
            if (controller.family == ControllerFamily::volume)
                throw std::invalid_argument("RunSpec: modal system with a volume controller");
            break;
        case SystemKind::bnn_controlled_volume:
            if (controller.family == ControllerFamily::modal)
                throw std::invalid_argument("RunSpec: volume system with a modal controller");
            break;
    }
    if (is_obe(system) && !source.is_zero())
        throw std::invalid_argument("RunSpec: source terms apply to the nonlocal system only");
}

namespace {

struct Channels {
    bool u_channel;  // scalar channel recorded
    bool pair;       // follower present
};

double max_abs(const GridField& v) {
    double m = 0.0;
    for (int i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
    return m;
}

bool state_ok(const GridField& v, double U) {
    if (!all_finite(v) || !std::isfinite(U)) return false;
    return max_abs(v) < 1e12 && std::abs(U) < 1e12;
}

}  // namespace

SimulationResult simulate(const RunSpec& spec) {
    spec.validate();
    const GridSpec grid = spec.grid;
    const double dt = spec.stepper.dt;
    const bool pair = is_controlled(spec.system);
    const bool obe_family = is_obe(spec.system);
    const bool has_source = !obe_family && !spec.source.is_zero();

    GridField vm = make_initial(spec.initial, grid, spec.seed);
    double Um = spec.U0;
    GridField vf = vm;
    double Uf = Um;
    if (pair) {
        if (spec.follower_perturbation) {
            const GridField pert =
                make_initial(*spec.follower_perturbation, grid, spec.seed ^ 0x9e3779b97f4a7c15ull);
            for (int i = 0; i < vf.size(); ++i) vf[i] += pert[i];
        }
        Uf += spec.follower_U0_offset;
    }

    // initial-state step-size check: a violation here is a configuration error
    {
        const double mv = pair ? std::max(max_abs(vm), max_abs(vf)) : max_abs(vm);
        const double adm = admissible_dt(grid, spec.params.nu, mv, spec.stepper.cfl_safety);
        if (dt > adm)
            throw CflError("dt = " + std::to_string(dt) + " violates the step-size bound; admissible dt <= " +
                               std::to_string(adm) + " for the initial data",
                           adm);
    }

    const Feedback feedback(pair ? spec.controller : ControllerSpec{}, grid);
    const bool ctrl_active = pair && feedback.active();

    ImexIntegrator master(grid, spec.params.nu, spec.stepper);
    ImexIntegrator follower(grid, spec.params.nu, spec.stepper);

    SimulationResult result;
    Trace& tr = result.trace;
    tr.system = to_string(spec.system);
    tr.dt = dt;
    tr.horizon = spec.horizon;
    tr.stride = spec.sample_stride;
    tr.seed = spec.seed;
    tr.l2_v.emplace();
    tr.h1_v.emplace();
    if (obe_family) tr.U.emplace();
    if (pair) {
        tr.l2_z.emplace();
        tr.h1_z.emplace();
        if (obe_family) tr.W.emplace();
        tr.control_l2.emplace();
    }

    const auto record = [&](double t) {
        tr.t.push_back(t);
        tr.l2_v->push_back(l2_norm(vm));
        tr.h1_v->push_back(h1_seminorm(vm));
        if (obe_family) tr.U->push_back(Um);
        if (pair) {
            GridField z(grid);
            for (int i = 0; i < z.size(); ++i) z[i] = vf[i] - vm[i];
            tr.l2_z->push_back(l2_norm(z));
            tr.h1_z->push_back(h1_seminorm(z));
            if (obe_family) tr.W->push_back(std::abs(Uf - Um));
            tr.control_l2->push_back(ctrl_active ? l2_norm(feedback(z)) : 0.0);
        }
    };

    record(0.0);

    const long long n_steps = std::max<long long>(1, std::llround(spec.horizon / dt));
    double source_int = 0.0, source_int_q3 = 0.0;
    const long long q3 = (3 * n_steps) / 4;

    GridField z(grid), ctrl(grid), h_field(grid);
    double t = 0.0;
    for (long long step_idx = 1; step_idx <= n_steps; ++step_idx) {
        // step-size budget against the current amplitude
        const double mv = pair ? std::max(max_abs(vm), max_abs(vf)) : max_abs(vm);
        const double adm = admissible_dt(grid, spec.params.nu, mv, spec.stepper.cfl_safety);
        if (dt > adm) {
            result.status = SimulationResult::Status::diverged;
            result.divergence_reason =
                "step-size bound violated at t = " + std::to_string(t) +
                " (admissible dt <= " + std::to_string(adm) + ")";
            result.t_end = t;
            break;
        }

        if (has_source) {
            h_field = spec.source.eval(t, grid, spec.params);
            const double hn = l2_norm_sq(h_field);
            source_int += dt * hn;
            if (step_idx == q3) source_int_q3 = source_int;
        }

        // explicit terms at the current time level
        GridField em(grid);
        double gm = 0.0;
        {
            const GridField adv = spec.stepper.linearized ? GridField(grid) : advection_dxsq(vm);
            if (obe_family) {
                for (int i = 0; i < em.size(); ++i) em[i] = Um * vm[i] - adv[i];
                gm = spec.params.R - spec.params.nu * Um - l2_norm_sq(vm);
            } else {
                const double nrm = l2_norm_sq(vm);
                for (int i = 0; i < em.size(); ++i)
                    em[i] = -adv[i] + spec.params.R * vm[i] - spec.params.k * nrm * vm[i];
                if (has_source)
                    for (int i = 0; i < em.size(); ++i) em[i] += h_field[i];
            }
        }

        GridField ef(grid);
        double gf = 0.0;
        if (pair) {
            if (ctrl_active) {
                for (int i = 0; i < z.size(); ++i) z[i] = vf[i] - vm[i];
                ctrl = feedback(z);
            }
            const GridField adv = spec.stepper.linearized ? GridField(grid) : advection_dxsq(vf);
            if (obe_family) {
                for (int i = 0; i < ef.size(); ++i) ef[i] = Uf * vf[i] - adv[i];
                gf = spec.params.R - spec.params.nu * Uf - l2_norm_sq(vf);
            } else {
                const double nrm = l2_norm_sq(vf);
                for (int i = 0; i < ef.size(); ++i)
                    ef[i] = -adv[i] + spec.params.R * vf[i] - spec.params.k * nrm * vf[i];
                if (has_source)
                    for (int i = 0; i < ef.size(); ++i) ef[i] += h_field[i];
            }
            if (ctrl_active)
                for (int i = 0; i < ef.size(); ++i) ef[i] += ctrl[i];
        }

        master.step(vm, Um, em, gm);
        if (pair) follower.step(vf, Uf, ef, gf);
        t = static_cast<double>(step_idx) * dt;

        if (!state_ok(vm, Um) || (pair && !state_ok(vf, Uf))) {
            result.status = SimulationResult::Status::diverged;
            result.divergence_reason = "non-finite state at t = " + std::to_string(t);
            result.t_end = t;
            break;
        }
        if (step_idx % spec.sample_stride == 0) record(t);
        result.t_end = t;
    }

    if (has_source && source_int > 1e-10 && q3 > 0 &&
        source_int - source_int_q3 > 0.2 * source_int)
        result.source_l2_warning = true;

    result.final_master = vm.values;
    result.final_master_U = Um;
    if (pair) {
        result.final_follower = vf.values;
        result.final_follower_U = Uf;
    }
    return result;
}

}  // namespace burgers
