#include "config.hpp"

#include <fstream>

namespace burgers::tool {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config field '" + path + "': " + what);
}

const json* find(const json& j, const std::string& dotted) {
    const json* cur = &j;
    std::size_t pos = 0;
    while (pos <= dotted.size()) {
        const std::size_t dot = dotted.find('.', pos);
        const std::string key = dotted.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (!cur->is_object() || !cur->contains(key)) return nullptr;
        cur = &(*cur)[key];
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return cur;
}

double get_number(const json& j, const std::string& path, std::optional<double> fallback = {}) {
    const json* v = find(j, path);
    if (!v) {
        if (fallback) return *fallback;
        fail(path, "missing");
    }
    if (!v->is_number()) fail(path, "must be a number");
    return v->get<double>();
}

long long get_integer(const json& j, const std::string& path, std::optional<long long> fallback = {}) {
    const json* v = find(j, path);
    if (!v) {
        if (fallback) return *fallback;
        fail(path, "missing");
    }
    if (!v->is_number_integer()) fail(path, "must be an integer");
    return v->get<long long>();
}

std::string get_string(const json& j, const std::string& path,
                       std::optional<std::string> fallback = {}) {
    const json* v = find(j, path);
    if (!v) {
        if (fallback) return *fallback;
        fail(path, "missing");
    }
    if (!v->is_string()) fail(path, "must be a string");
    return v->get<std::string>();
}

bool get_bool(const json& j, const std::string& path, bool fallback) {
    const json* v = find(j, path);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(path, "must be a boolean");
    return v->get<bool>();
}

std::vector<double> load_profile(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open sampled profile " + path.string());
    std::vector<double> vals;
    double x;
    while (is >> x) vals.push_back(x);
    return vals;
}

InitialSpec parse_initial(const json& j, const std::string& path,
                          const std::filesystem::path& base_dir) {
    const json* v = find(j, path);
    if (!v) fail(path, "missing");
    InitialSpec spec;
    if (v->contains("path")) {
        spec.preset = InitialSpec::Preset::sampled;
        spec.profile = load_profile(base_dir / get_string(j, path + ".path"));
        return spec;
    }
    const std::string preset = get_string(j, path + ".preset");
    if (preset == "mode1") spec.preset = InitialSpec::Preset::mode1;
    else if (preset == "bump") spec.preset = InitialSpec::Preset::bump;
    else if (preset == "random") spec.preset = InitialSpec::Preset::random;
    else fail(path + ".preset", "unknown preset '" + preset + "' (mode1|bump|random)");
    spec.amplitude = get_number(j, path + ".amplitude", 1.0);
    return spec;
}

}  // namespace

std::string fingerprint(const json& doc) {
    const std::string s = doc.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

FitQuantity default_fit_quantity(SystemKind system, const std::string& target) {
    switch (system) {
        case SystemKind::obe:
        case SystemKind::bnn: return FitQuantity::l2_v_sq;
        case SystemKind::obe_controlled:
            return target == "h1" ? FitQuantity::sync_h1 : FitQuantity::sync_l2;
        case SystemKind::bnn_controlled_modal:
            return target == "h1" ? FitQuantity::h1_z_sq : FitQuantity::l2_z_sq;
        case SystemKind::bnn_controlled_volume: return FitQuantity::l2_z_sq;
    }
    return FitQuantity::l2_v_sq;
}

std::optional<Claim> default_claim(SystemKind system, const std::string& target) {
    switch (system) {
        case SystemKind::obe:
        case SystemKind::bnn: return std::nullopt;
        case SystemKind::obe_controlled:
            return target == "h1" ? Claim::obe_h1 : Claim::obe_l2;
        case SystemKind::bnn_controlled_modal:
            return target == "h1" ? Claim::bnn_h1_modal : Claim::bnn_l2_modal;
        case SystemKind::bnn_controlled_volume: return Claim::bnn_l2_volume;
    }
    return std::nullopt;
}

LoadedConfig parse_run_config(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    const long long schema = get_integer(doc, "schema", 1);
    if (schema != 1) throw ConfigError("config: unsupported schema version " + std::to_string(schema));

    LoadedConfig cfg;
    cfg.canonical = doc;
    cfg.name = get_string(doc, "name", std::string("run"));

    const std::string system_name = get_string(doc, "system");
    const auto system = system_from_string(system_name);
    if (!system) fail("system", "unknown system '" + system_name + "'");
    cfg.spec.system = *system;

    cfg.spec.params.nu = get_number(doc, "physical.nu");
    cfg.spec.params.R = get_number(doc, "physical.R");
    cfg.spec.params.k = get_number(doc, "physical.k", 1.0);

    const long long points = get_integer(doc, "grid.points");
    if (points < 8) fail("grid.points", "need at least 8 interior points");
    cfg.spec.grid = GridSpec(static_cast<int>(points));

    cfg.spec.stepper.dt = get_number(doc, "stepper.dt");
    const std::string scheme = get_string(doc, "stepper.scheme", std::string("imex-cn-ab2"));
    if (scheme == "imex-cn-ab2") cfg.spec.stepper.scheme = Scheme::imex_cn_ab2;
    else if (scheme == "imex-be-fe") cfg.spec.stepper.scheme = Scheme::imex_be_fe;
    else fail("stepper.scheme", "unknown scheme '" + scheme + "' (imex-cn-ab2|imex-be-fe)");
    cfg.spec.stepper.cfl_safety = get_number(doc, "stepper.cfl_safety", 0.25);
    cfg.spec.stepper.linearized = get_bool(doc, "stepper.linearized", false);

    if (find(doc, "source")) {
        const std::string kind = get_string(doc, "source.kind", std::string("zero"));
        if (kind == "zero") cfg.spec.source.kind = SourceTerm::Kind::zero;
        else if (kind == "mms") cfg.spec.source.kind = SourceTerm::Kind::mms;
        else if (kind == "sampled") {
            cfg.spec.source.kind = SourceTerm::Kind::sampled;
            cfg.spec.source.profile = load_profile(base_dir / get_string(doc, "source.path"));
        } else fail("source.kind", "unknown kind '" + kind + "' (zero|mms|sampled)");
    }

    cfg.spec.initial = parse_initial(doc, "initial", base_dir);
    cfg.spec.U0 = get_number(doc, "initial.U0", 0.0);
    if (find(doc, "follower")) {
        if (find(doc, "follower.perturbation"))
            cfg.spec.follower_perturbation = parse_initial(doc, "follower.perturbation", base_dir);
        cfg.spec.follower_U0_offset = get_number(doc, "follower.U0_offset", 0.0);
    }

    const json* ctrl = find(doc, "controller");
    if (is_controlled(cfg.spec.system)) {
        if (!ctrl) fail("controller", "missing for a controlled system");
        if (ctrl->is_string() && ctrl->get<std::string>() == "auto") {
            cfg.controller_auto = true;
        } else if (ctrl->is_object()) {
            const std::string family = get_string(doc, "controller.family");
            if (family == "none") cfg.spec.controller.family = ControllerFamily::none;
            else if (family == "modal") cfg.spec.controller.family = ControllerFamily::modal;
            else if (family == "volume") cfg.spec.controller.family = ControllerFamily::volume;
            else fail("controller.family", "unknown family '" + family + "'");
            cfg.spec.controller.mu = get_number(doc, "controller.mu", 0.0);
            cfg.spec.controller.count =
                static_cast<int>(get_integer(doc, "controller.count", 1));
        } else {
            fail("controller", "must be an object or \"auto\"");
        }
    }

    if (find(doc, "planner")) {
        cfg.planner.target = get_string(doc, "planner.target", std::string("l2"));
        if (cfg.planner.target != "l2" && cfg.planner.target != "h1")
            fail("planner.target", "must be 'l2' or 'h1'");
        if (find(doc, "planner.xi")) cfg.planner.xi = get_number(doc, "planner.xi");
        cfg.planner.H0 = get_number(doc, "planner.H0", 0.0);
        cfg.planner.H0_sup = get_number(doc, "planner.H0_sup", 0.0);
    }
    if (cfg.controller_auto && !is_obe(cfg.spec.system) && !cfg.planner.xi)
        fail("planner.xi", "required for automatic gain planning of the nonlocal system");

    cfg.constants.beta3 = get_number(doc, "constants.beta3", cfg.constants.beta3);
    cfg.constants.beta4 = get_number(doc, "constants.beta4", cfg.constants.beta4);
    cfg.constants.c0 = get_number(doc, "constants.c0", cfg.constants.c0);

    if (find(doc, "fit")) {
        if (find(doc, "fit.quantity")) {
            const std::string q = get_string(doc, "fit.quantity");
            if (q == "l2_v2") cfg.fit.quantity = FitQuantity::l2_v_sq;
            else if (q == "l2_z2") cfg.fit.quantity = FitQuantity::l2_z_sq;
            else if (q == "h1_z2") cfg.fit.quantity = FitQuantity::h1_z_sq;
            else if (q == "sync-l2") cfg.fit.quantity = FitQuantity::sync_l2;
            else if (q == "sync-h1") cfg.fit.quantity = FitQuantity::sync_h1;
            else fail("fit.quantity", "unknown quantity '" + q + "'");
        }
        cfg.fit.burn_in = get_number(doc, "fit.burn_in", -1.0);
        cfg.fit.floor = get_number(doc, "fit.floor", 1e-12);
        cfg.fit.tolerance = get_number(doc, "fit.tolerance", 0.1);
    }

    cfg.spec.horizon = get_number(doc, "horizon");
    cfg.spec.sample_stride = get_integer(doc, "sample_stride", 1);
    cfg.spec.seed = static_cast<std::uint64_t>(get_integer(doc, "seed", 0));
    if (find(doc, "output")) cfg.output = get_string(doc, "output");

    try {
        cfg.spec.validate();
        cfg.constants.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config validation: ") + e.what());
    }
    return cfg;
}

LoadedConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(is);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path.string() + ": " + e.what());
    }
    return parse_run_config(doc, path.parent_path());
}

json make_manifest(const LoadedConfig& cfg, const json& run_record, double wall_time_s) {
    json m;
    m["schema"] = 1;
    m["tool"] = "burgers-stab 0.1.0";
    m["config"] = cfg.canonical;
    m["config_fingerprint"] = fingerprint(cfg.canonical);
    m["wall_time_s"] = wall_time_s;
    for (auto it = run_record.begin(); it != run_record.end(); ++it) m[it.key()] = it.value();
    return m;
}

bool manifest_roundtrip_ok(const json& manifest) {
    if (!manifest.contains("config") || !manifest.contains("config_fingerprint")) return false;
    return fingerprint(manifest["config"]) == manifest["config_fingerprint"].get<std::string>();
}

}  // namespace burgers::tool
