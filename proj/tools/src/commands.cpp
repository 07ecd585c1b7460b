#include "commands.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

namespace burgers::tool {

namespace fs = std::filesystem;

std::filesystem::path resolve_out_dir(const std::string& requested) {
    fs::path p(requested);
    if (p.is_absolute()) return p;
    if (const char* root = std::getenv("BURGERS_STAB_OUT")) return fs::path(root) / p;
    return p;
}

namespace {

struct ResolvedController {
    ControllerSpec spec;
    std::optional<CertificateLedger> ledger;
    std::optional<double> certified;
    std::optional<Claim> claim;
    bool planned = false;
    long long planned_n = 0;
};

PlanFamily plan_family_for(SystemKind system, const std::string& target) {
    switch (system) {
        case SystemKind::obe_controlled:
            return target == "h1" ? PlanFamily::obe_h1 : PlanFamily::obe_l2;
        case SystemKind::bnn_controlled_modal:
            return target == "h1" ? PlanFamily::bnn_modal_h1 : PlanFamily::bnn_modal_l2;
        case SystemKind::bnn_controlled_volume:
            return PlanFamily::bnn_volume_l2;
        default:
            throw ConfigError("no gain planner for an uncontrolled system");
    }
}

ResolvedController resolve_controller(const LoadedConfig& cfg) {
    ResolvedController rc;
    if (!is_controlled(cfg.spec.system)) {
        // evaluate the absorbing-ball constants for the report even without a gain
        if (is_obe(cfg.spec.system)) {
            rc.ledger = obe_ledger(cfg.spec.params, cfg.constants, 0.0, 1);
        } else if (cfg.planner.xi && cfg.spec.params.k > 0.0) {
            rc.ledger = bnn_ledger(cfg.spec.params, cfg.constants, cfg.planner.H0,
                                   cfg.planner.H0_sup, 0.0, 1, *cfg.planner.xi);
        }
        return rc;
    }

    const auto claim = default_claim(cfg.spec.system, cfg.planner.target);
    if (cfg.controller_auto) {
        const PlanFamily family = plan_family_for(cfg.spec.system, cfg.planner.target);
        PlanResult plan;
        if (is_obe(cfg.spec.system)) {
            plan = plan_gains_obe(cfg.spec.params, cfg.constants, cfg.planner.target);
        } else {
            plan = plan_gains_bnn(cfg.spec.params, cfg.constants, cfg.planner.H0,
                                  cfg.planner.H0_sup, *cfg.planner.xi, family);
        }
        rc.spec.family = cfg.spec.system == SystemKind::bnn_controlled_volume
                             ? ControllerFamily::volume
                             : ControllerFamily::modal;
        rc.spec.mu = plan.mu;
        rc.planned_n = plan.n_modes;
        if (plan.n_modes > std::numeric_limits<int>::max())
            throw ResolutionError("planned mode count N = " + std::to_string(plan.n_modes) +
                                  " cannot be realized on any in-memory grid");
        rc.spec.count = static_cast<int>(plan.n_modes);
        rc.ledger = plan.ledger;
        rc.certified = plan.certified_rate;
        rc.claim = claim;
        rc.planned = true;
        return rc;
    }

    rc.spec = cfg.spec.controller;
    // evaluate the certificate at the manual gain when the inputs allow it
    if (is_obe(cfg.spec.system)) {
        rc.ledger = obe_ledger(cfg.spec.params, cfg.constants, rc.spec.mu,
                               std::max(1, rc.spec.count));
    } else if (cfg.planner.xi) {
        rc.ledger = bnn_ledger(cfg.spec.params, cfg.constants, cfg.planner.H0,
                               cfg.planner.H0_sup, rc.spec.mu, std::max(1, rc.spec.count),
                               *cfg.planner.xi);
    }
    if (rc.ledger && claim) {
        rc.certified = certified_rate(*rc.ledger, *claim);
        rc.claim = claim;
    }
    return rc;
}

}  // namespace

RunArtifacts run_one(const LoadedConfig& cfg, const fs::path& out_dir, bool quiet) {
    const auto t0 = std::chrono::steady_clock::now();
    RunArtifacts out;
    out.dir = out_dir;

    RunSpec spec = cfg.spec;
    ResolvedController rc = resolve_controller(cfg);
    if (is_controlled(spec.system)) spec.controller = rc.spec;

    if (!quiet && !is_obe(spec.system) && spec.params.k < 0.0)
        std::cerr << "warning: k < 0 selects the unstable nonlocal sign; "
                     "solutions may blow up and no certificate applies\n";

    fs::create_directories(out_dir);
    const SimulationResult sim = simulate(spec);
    write_csv(sim.trace, (out_dir / "trace.csv").string());

    json rec;
    rec["status"] = sim.diverged() ? "diverged" : "ok";
    rec["rows"] = sim.trace.rows();
    rec["t_end"] = sim.t_end;
    if (sim.diverged()) rec["divergence"] = {{"t", sim.t_end}, {"reason", sim.divergence_reason}};
    if (rc.planned) rec["planned"] = {{"mu", rc.spec.mu}, {"N", rc.planned_n}};
    if (sim.source_l2_warning) {
        rec["source_l2_warning"] = true;
        if (!quiet)
            std::cerr << "warning: the running integral of ||h||^2 keeps growing; "
                         "the source does not look square-integrable in time\n";
    }

    // decay-rate fit and certificate comparison
    std::optional<RateFit> fit;
    const FitQuantity q = cfg.fit.quantity.value_or(
        default_fit_quantity(spec.system, cfg.planner.target));
    try {
        const auto series = quantity_series(sim.trace, q);
        double burn = cfg.fit.burn_in;
        if (burn < 0.0 && !sim.trace.t.empty())
            burn = sim.trace.t.front() + 0.1 * (sim.trace.t.back() - sim.trace.t.front());
        fit = fit_decay_rate(sim.trace.t, series, burn, cfg.fit.floor);
        rec["fit"] = {{"quantity", to_string(q)},
                      {"rate", fit->rate},
                      {"residual", fit->residual},
                      {"floor_hit", fit->floor_hit},
                      {"window", {fit->t_start, fit->t_end}}};
    } catch (const Error& e) {
        rec["fit"] = {{"quantity", to_string(q)}, {"error", e.what()}};
    }

    if (rc.ledger) {
        std::ofstream os(out_dir / "ledger.txt");
        os << rc.ledger->report();
        if (rc.certified) {
            os << "certified rate for claim "
               << (rc.claim ? to_string(*rc.claim) : std::string("-")) << ": " << *rc.certified
               << "\n";
        }
        rec["conditions_ok"] =
            rc.claim ? json(rc.ledger->all_satisfied(conditions_for(*rc.claim))) : json();
    }
    if (rc.certified) rec["certified_rate"] = *rc.certified;
    if (fit && rc.certified) {
        const Verdict v = rate_verdict(*fit, *rc.certified, cfg.fit.tolerance);
        rec["verdict"] = v.pass ? "pass" : "fail";
        rec["rate_margin"] = v.margin;
    } else {
        rec["verdict"] = "n/a";
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const json manifest = make_manifest(cfg, rec, wall);
    std::ofstream ms(out_dir / "manifest.json");
    ms << manifest.dump(2) << "\n";

    out.exit_code = sim.diverged() ? kExitDivergence : kExitOk;
    out.record = rec;

    if (!quiet) {
        std::cout << "run " << cfg.name << ": " << rec["status"].get<std::string>() << ", "
                  << sim.trace.rows() << " samples";
        if (rc.planned) std::cout << ", planned mu=" << rc.spec.mu << " N=" << rc.planned_n;
        if (fit) std::cout << ", fitted rate " << fit->rate;
        if (rc.certified) std::cout << ", certified " << *rc.certified;
        std::cout << ", verdict " << rec["verdict"].get<std::string>() << "\n"
                  << "artifacts in " << out_dir.string() << "\n";
    }
    return out;
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& out_override) {
    try {
        const LoadedConfig cfg = load_run_config(config_path);
        std::string out = out_override.value_or(
            cfg.output.value_or("runs/" + cfg.name + "-" + fingerprint(cfg.canonical).substr(8, 8)));
        return run_one(cfg, resolve_out_dir(out)).exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const CflError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const RateTooSmallError& e) {
        std::cerr << "planner error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const InfeasibleError& e) {
        std::cerr << "planner error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_plan(const PlanOptions& opts) {
    try {
        PhysicalParams p{opts.nu, opts.R, opts.k};
        std::ostringstream report;
        CertificateLedger ledger;
        double mu = 0.0;
        long long n = 1;
        double certified = 0.0;

        const auto lambda_of = [](long long k) {
            const double kpi = static_cast<double>(k) * 3.14159265358979323846;
            return kpi * kpi;
        };
        const auto smallest_n = [&](double needed, bool strict) {
            long long nn = 1;
            while (strict ? lambda_of(nn + 1) <= needed : lambda_of(nn + 1) < needed) ++nn;
            return nn;
        };

        if (opts.family == "obe-l2" || opts.family == "obe-h1") {
            const std::string target = opts.family == "obe-l2" ? "l2" : "h1";
            if (opts.mu) {
                mu = *opts.mu;
                auto led1 = obe_ledger(p, opts.constants, mu, 1);
                const double bound = target == "l2" ? led1.M5 : led1.Q0;
                n = smallest_n(4.0 * bound / p.nu, false);
                ledger = obe_ledger(p, opts.constants, mu, n);
                certified = target == "l2" ? ledger.d2 : ledger.alpha0;
            } else {
                auto plan = plan_gains_obe(p, opts.constants, target);
                mu = plan.mu;
                n = plan.n_modes;
                ledger = plan.ledger;
                certified = plan.certified_rate;
            }
        } else if (opts.family == "bnn-modal-l2" || opts.family == "bnn-modal-h1" ||
                   opts.family == "bnn-volume-l2") {
            if (!opts.xi) throw ConfigError("plan: --xi is required for the nonlocal families");
            const PlanFamily fam = opts.family == "bnn-modal-l2" ? PlanFamily::bnn_modal_l2
                                   : opts.family == "bnn-modal-h1" ? PlanFamily::bnn_modal_h1
                                                                   : PlanFamily::bnn_volume_l2;
            if (opts.mu) {
                mu = *opts.mu;
                auto led1 = bnn_ledger(p, opts.constants, opts.H0, opts.H0_sup, mu, 1, *opts.xi);
                if (fam == PlanFamily::bnn_volume_l2) {
                    const double lambda1 = lambda_of(1);
                    n = std::max<long long>(
                        1, static_cast<long long>(std::ceil(2.0 * mu / (p.nu * std::sqrt(lambda1)))));
                } else if (fam == PlanFamily::bnn_modal_l2) {
                    n = smallest_n(2.0 * (led1.sigma + 2.0 * led1.A0 + 2.0 * p.R) / p.nu, true);
                } else {
                    n = smallest_n(2.0 * (led1.sigma + 2.0 * led1.Q1) / p.nu, true);
                }
                ledger = bnn_ledger(p, opts.constants, opts.H0, opts.H0_sup, mu, n, *opts.xi);
                certified = fam == PlanFamily::bnn_volume_l2 ? ledger.sigma + ledger.a0 : *opts.xi;
            } else {
                auto plan = plan_gains_bnn(p, opts.constants, opts.H0, opts.H0_sup, *opts.xi, fam);
                mu = plan.mu;
                n = plan.n_modes;
                ledger = plan.ledger;
                certified = plan.certified_rate;
            }
        } else {
            throw ConfigError("plan: unknown family '" + opts.family +
                              "' (obe-l2|obe-h1|bnn-modal-l2|bnn-modal-h1|bnn-volume-l2)");
        }

        report.precision(12);
        report << "family " << opts.family << "\n"
               << "mu = " << mu << "\n"
               << "N = " << n << "\n"
               << "certified rate = " << certified << "\n\n"
               << ledger.report();
        std::cout << report.str();
        if (opts.out_file) {
            std::ofstream os(*opts.out_file);
            os << report.str();
        }
        return kExitOk;
    } catch (const RateTooSmallError& e) {
        std::cerr << "planner error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const InfeasibleError& e) {
        std::cerr << "planner error (diverging bound: " << e.bound_name << "): " << e.what()
                  << "\n";
        return kExitInfeasible;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

namespace {

json set_by_path(json doc, const std::string& dotted, const json& value) {
    std::string ptr = "/";
    for (char c : dotted) ptr += (c == '.') ? '/' : c;
    doc[json::json_pointer(ptr)] = value;
    return doc;
}

std::string csv_escape(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string csv_sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

}  // namespace

int cmd_sweep(const std::string& sweep_path, int jobs,
              const std::optional<std::string>& out_override) {
    json doc;
    try {
        std::ifstream is(sweep_path);
        if (!is) throw ConfigError("cannot open sweep file " + sweep_path);
        doc = json::parse(is);
    } catch (const json::parse_error& e) {
        std::cerr << "sweep file parse error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    if (!doc.is_object() || !doc.contains("base") || !doc.contains("axes") ||
        !doc["axes"].is_object() || doc["axes"].empty()) {
        std::cerr << "config error: sweep file needs a 'base' config and a non-empty 'axes' object\n";
        return kExitConfig;
    }

    std::vector<std::string> axis_names;
    std::vector<std::vector<json>> axis_values;
    for (auto it = doc["axes"].begin(); it != doc["axes"].end(); ++it) {
        if (!it.value().is_array() || it.value().empty()) {
            std::cerr << "config error: sweep axis '" << it.key() << "' must be a non-empty array\n";
            return kExitConfig;
        }
        axis_names.push_back(it.key());
        axis_values.emplace_back(it.value().begin(), it.value().end());
    }

    std::size_t total = 1;
    for (const auto& vals : axis_values) total *= vals.size();

    const fs::path base_dir = fs::path(sweep_path).parent_path();
    const fs::path out_root = resolve_out_dir(out_override.value_or("sweep"));
    fs::create_directories(out_root);

    struct Row {
        std::vector<json> values;
        json record;
        std::string status;
    };
    std::vector<Row> rows(total);

    // materialize all configs up front so config errors surface before any run
    std::vector<LoadedConfig> configs;
    configs.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        json cfg_json = doc["base"];
        std::size_t rem = idx;
        rows[idx].values.resize(axis_names.size());
        for (std::size_t a = 0; a < axis_names.size(); ++a) {
            const auto& vals = axis_values[a];
            const json& v = vals[rem % vals.size()];
            rem /= vals.size();
            rows[idx].values[a] = v;
            cfg_json = set_by_path(cfg_json, axis_names[a], v);
        }
        try {
            configs.push_back(parse_run_config(cfg_json, base_dir));
        } catch (const Error& e) {
            std::cerr << "config error in sweep point " << idx << ": " << e.what() << "\n";
            return kExitConfig;
        }
    }

    std::atomic<std::size_t> next{0};
    const int workers = std::max(1, jobs);
    const auto work = [&]() {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            char dir_name[32];
            std::snprintf(dir_name, sizeof dir_name, "run_%04zu", idx);
            const fs::path dir = out_root / dir_name;
            try {
                const RunArtifacts art = run_one(configs[idx], dir, /*quiet=*/true);
                rows[idx].record = art.record;
                rows[idx].status = art.record["status"].get<std::string>();
            } catch (const Error& e) {
                rows[idx].status = std::string("error: ") + e.what();
            } catch (const std::exception& e) {
                rows[idx].status = std::string("error: ") + e.what();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::ofstream summary(out_root / "summary.csv");
    summary << "run";
    for (const auto& name : axis_names) summary << "," << name;
    summary << ",status,fitted_rate,certified_rate,conditions_ok,verdict\n";
    for (std::size_t idx = 0; idx < total; ++idx) {
        char dir_name[32];
        std::snprintf(dir_name, sizeof dir_name, "run_%04zu", idx);
        summary << dir_name;
        for (const auto& v : rows[idx].values) summary << "," << csv_escape(v);
        const json& r = rows[idx].record;
        summary << "," << csv_sanitize(rows[idx].status);
        summary << ",";
        if (r.contains("fit") && r["fit"].contains("rate")) summary << r["fit"]["rate"].get<double>();
        summary << ",";
        if (r.contains("certified_rate")) summary << r["certified_rate"].get<double>();
        summary << ",";
        if (r.contains("conditions_ok") && r["conditions_ok"].is_boolean())
            summary << (r["conditions_ok"].get<bool>() ? "true" : "false");
        summary << ",";
        summary << (r.contains("verdict") ? r["verdict"].get<std::string>() : "n/a");
        summary << "\n";
    }
    std::cout << "sweep: " << total << " runs in " << out_root.string() << "\n";
    return kExitOk;
}

int cmd_verify(const VerifyOptions& opts) {
    try {
        const InequalityReport rep = inequality_ensemble(opts.seed, opts.count, opts.max_mode,
                                                         opts.constants, opts.grid_points);
        std::cout << rep.to_text();
        return rep.total_violations() == 0 ? kExitOk : kExitInequalityViolation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_fit(const FitOptionsCli& opts) {
    try {
        const Trace tr = read_csv_file(opts.csv_path);
        FitQuantity q;
        if (opts.quantity == "auto")
            q = tr.l2_z ? FitQuantity::l2_z_sq : FitQuantity::l2_v_sq;
        else if (opts.quantity == "l2_v2") q = FitQuantity::l2_v_sq;
        else if (opts.quantity == "l2_z2") q = FitQuantity::l2_z_sq;
        else if (opts.quantity == "h1_z2") q = FitQuantity::h1_z_sq;
        else if (opts.quantity == "sync-l2") q = FitQuantity::sync_l2;
        else if (opts.quantity == "sync-h1") q = FitQuantity::sync_h1;
        else throw ConfigError("fit-rate: unknown quantity '" + opts.quantity + "'");

        const auto series = quantity_series(tr, q);
        double burn = opts.burn_in;
        if (burn < 0.0 && !tr.t.empty()) burn = tr.t.front() + 0.1 * (tr.t.back() - tr.t.front());
        const RateFit fit = fit_decay_rate(tr.t, series, burn, opts.floor);
        std::cout.precision(12);
        std::cout << "quantity " << to_string(q) << "\n"
                  << "rate = " << fit.rate << "\n"
                  << "residual = " << fit.residual << "\n"
                  << "window = [" << fit.t_start << ", " << fit.t_end << "] (" << fit.samples
                  << " samples)\n"
                  << "floor_hit = " << (fit.floor_hit ? "true" : "false") << "\n";
        if (opts.certified) {
            const Verdict v = rate_verdict(fit, *opts.certified, opts.tolerance);
            std::cout << "certified = " << v.certified << "\n"
                      << "verdict = " << (v.pass ? "pass" : "fail") << " (margin " << v.margin
                      << ")\n";
        }
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace burgers::tool
