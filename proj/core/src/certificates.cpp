#include "burgers/certificates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace burgers {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLambda1 = kPi * kPi;

double lambda_of(long long k) {
    const double kpi = static_cast<double>(k) * kPi;
    return kpi * kpi;
}

double pow5(double x) { return x * x * x * x * x; }

// beta3^24 * nu^-7 * 7^7 * 2^-9, the coefficient in front of the tenth-power
// norm terms produced by the cubic gradient integral.
double gn_coeff(double beta3, double nu) {
    return std::pow(beta3, 24) * std::pow(nu, -7) * (823543.0 / 512.0);
}

void add_condition(CertificateLedger& led, std::string name, double margin, bool strict) {
    Condition c;
    c.name = std::move(name);
    c.margin = margin;
    c.strict = strict;
    c.satisfied = strict ? margin > 0.0 : margin >= 0.0;
    led.conditions.push_back(std::move(c));
}

void check_common(const PhysicalParams& p, const InequalityConstants& c) {
    if (!(p.nu > 0.0)) throw std::invalid_argument("certificates: nu must be > 0");
    if (p.R < 0.0) throw std::invalid_argument("certificates: R must be >= 0");
    c.validate();
}

}  // namespace

const Condition* CertificateLedger::find(const std::string& name) const {
    for (const auto& c : conditions)
        if (c.name == name) return &c;
    return nullptr;
}

bool CertificateLedger::all_satisfied(const std::vector<std::string>& names) const {
    for (const auto& n : names) {
        const Condition* c = find(n);
        if (!c || !c->satisfied) return false;
    }
    return true;
}

CertificateLedger obe_ledger(const PhysicalParams& p, const InequalityConstants& c,
                             double mu, long long n_modes) {
    check_common(p, c);
    if (mu < 0.0) throw std::invalid_argument("obe_ledger: mu must be >= 0");
    if (n_modes < 1) throw std::invalid_argument("obe_ledger: N must be >= 1");

    CertificateLedger led;
    led.family = LedgerFamily::obe;
    led.params = p;
    led.constants = c;
    led.mu = mu;
    led.n_modes = n_modes;
    led.lambda1 = kLambda1;
    led.lambda_n1 = lambda_of(n_modes + 1);

    led.d0 = p.nu * std::min(1.0, 2.0 * kLambda1);
    led.d1 = led.d0;
    led.d2 = p.nu * std::min(1.0, kLambda1);
    led.alpha0 = 0.5 * p.nu * std::min(1.0, 0.5 * kLambda1);

    const double gn = gn_coeff(c.beta3, p.nu);
    led.M1 = 2.0 * p.R * p.R / (p.nu * led.d0);
    led.M2 = 2.0 * (led.M1 * led.M1 / p.nu + gn * pow5(led.M1)) / (kLambda1 * p.nu);
    led.M3 = 2.0 * p.R * p.R / (p.nu * led.d1) + mu * led.M1 / led.d1;
    led.M4 = 2.0 * (led.M3 * led.M3 / p.nu + gn * pow5(led.M3) + 0.5 * mu * led.M2) /
             (kLambda1 * p.nu);
    led.M5 = std::sqrt(led.M3) + led.M3 * led.M3 / (2.0 * p.nu) +
             0.75 * std::pow(p.nu, -1.0 / 3.0) * std::pow(c.beta4, 8.0 / 3.0) *
                 std::pow(std::sqrt(led.M4) + 2.0 * std::sqrt(led.M2), 4.0 / 3.0);
    led.Q0 = (4.0 * c.c0 * c.c0 / p.nu) * led.M4 +
             (4.0 * c.c0 * c.c0 / p.nu + 0.5 / p.nu) * led.M2 + std::sqrt(led.M3);

    add_condition(led, "l2-sync.gain", mu - led.M5, false);
    add_condition(led, "l2-sync.modes", p.nu / 4.0 - led.M5 / led.lambda_n1, false);
    add_condition(led, "h1-sync.gain", mu - led.Q0, false);
    add_condition(led, "h1-sync.modes", p.nu / 4.0 - led.Q0 / led.lambda_n1, false);

    led.provenance = {
        {"d0", "nu*min(1, 2*lambda1)"},
        {"d1", "nu*min(1, 2*lambda1)"},
        {"d2", "nu*min(1, lambda1)"},
        {"alpha0", "(nu/2)*min(1, lambda1/2)"},
        {"M1", "2*R^2/(nu*d0)"},
        {"M2", "2*(M1^2/nu + beta3^24*nu^-7*7^7*2^-9*M1^5)/(lambda1*nu)  [steady quotient, x2]"},
        {"M3", "2*R^2/(nu*d1) + (mu/d1)*M1"},
        {"M4", "2*(M3^2/nu + beta3^24*nu^-7*7^7*2^-9*M3^5 + (mu/2)*M2)/(lambda1*nu)  [steady quotient, x2]"},
        {"M5", "sqrt(M3) + M3^2/(2*nu) + (3/4)*nu^-1/3*beta4^(8/3)*(sqrt(M4)+2*sqrt(M2))^(4/3)"},
        {"Q0", "(4*c0^2/nu)*M4 + (4*c0^2/nu + 1/(2*nu))*M2 + sqrt(M3)"},
    };
    led.notes = {
        "Q0 leading coefficient read as 4*c0^2/nu (printed with a spurious nu factor)",
        "H1 energy bound read with both gradient radii M4 + M2 (printed with one duplicated)",
        "h1-sync certified rate is alpha0 (omitted from the printed decay exponent)",
    };
    return led;
}

CertificateLedger bnn_ledger(const PhysicalParams& p, const InequalityConstants& c,
                             double H0, double H0_sup, double mu, long long n_modes,
                             double xi, bool source_free) {
    check_common(p, c);
    if (!(p.k > 0.0)) throw std::invalid_argument("bnn_ledger: k must be > 0");
    if (mu < 0.0) throw std::invalid_argument("bnn_ledger: mu must be >= 0");
    if (n_modes < 1) throw std::invalid_argument("bnn_ledger: N must be >= 1");
    if (H0 < 0.0 || H0_sup < 0.0)
        throw std::invalid_argument("bnn_ledger: source norms must be >= 0");
    if (!(xi > kLambda1 * p.nu / 2.0))
        throw RateTooSmallError("bnn_ledger: requested rate xi = " + std::to_string(xi) +
                                " must exceed lambda1*nu/2 = " +
                                std::to_string(kLambda1 * p.nu / 2.0) +
                                " (sigma would not be positive)");

    CertificateLedger led;
    led.family = LedgerFamily::bnn;
    led.params = p;
    led.constants = c;
    led.mu = mu;
    led.n_modes = n_modes;
    led.xi = xi;
    led.H0 = H0;
    led.H0_sup = H0_sup;
    led.lambda1 = kLambda1;
    led.lambda_n1 = lambda_of(n_modes + 1);

    led.sigma = xi - kLambda1 * p.nu / 2.0;
    led.a0 = 0.5 * p.nu * kLambda1;

    const double gn = gn_coeff(c.beta3, p.nu);
    led.H1_sq = 2.0 * (p.R * p.R / (2.0 * kLambda1 * p.nu * p.k) + H0 / (kLambda1 * p.nu));
    led.H2 = 2.0 *
             (4.0 / p.nu * H0_sup + 4.0 * p.R * p.R / p.nu * led.H1_sq + gn * pow5(led.H1_sq)) /
             (p.nu * kLambda1);
    const double young = source_free ? 0.0 : 1.0;
    led.H3_sq = 2.0 *
                (0.25 * mu * led.H1_sq + 0.25 * H0_sup + (young + p.R * p.R) / (2.0 * p.k)) /
                (p.nu * kLambda1);
    led.H4 = 2.0 *
             (0.25 * mu * led.H2 + 4.0 / p.nu * H0_sup + 4.0 * p.R * p.R / p.nu * led.H3_sq +
              gn * pow5(led.H3_sq)) /
             (p.nu * kLambda1);

    const double third = 1.0 / 3.0;
    const double nu_third = std::pow(p.nu, -third);
    led.vol_grad =
        0.75 * std::pow(c.beta4, 4.0 * third) * nu_third * std::pow(led.H2, 2.0 * third);
    led.A0 = 0.75 * std::pow(2.0 * c.beta4, 4.0 * third) * nu_third *
                 std::pow(led.H4, 2.0 * third) +
             led.vol_grad;
    led.A1 = p.R + led.vol_grad;
    led.Q1 = (4.0 * c.c0 * c.c0 / p.nu) * (led.H4 + std::sqrt(led.H3_sq)) + p.R +
             p.k * std::pow(kLambda1, -0.5) * (std::sqrt(led.H1_sq) + std::sqrt(led.H3_sq)) *
                 std::sqrt(led.H2);

    add_condition(led, "modal-l2.gain", mu - (led.sigma / 2.0 + p.R + led.A0), true);
    add_condition(led, "modal-l2.modes",
                  p.nu / 2.0 - (led.sigma + 2.0 * led.A0 + 2.0 * p.R) / led.lambda_n1, true);
    add_condition(led, "modal-h1.gain", mu - (led.Q1 + led.sigma / 2.0), true);
    add_condition(led, "modal-h1.modes",
                  p.nu / 2.0 - (led.sigma + 2.0 * led.Q1) / led.lambda_n1, true);
    add_condition(led, "volume.gain", mu - (led.A1 + led.sigma / 2.0), false);
    add_condition(led, "volume.gain-alt", mu - (led.sigma + p.R + led.vol_grad), false);
    const double nn = static_cast<double>(n_modes);
    add_condition(led, "volume.modes", p.nu * kLambda1 - 4.0 * mu * mu / (p.nu * nn * nn), false);

    led.provenance = {
        {"sigma", "xi - lambda1*nu/2"},
        {"a0", "nu*lambda1/2"},
        {"H1^2", "2*(R^2/(2*lambda1*nu*k) + H0/(lambda1*nu))  [steady quotient, x2]"},
        {"H2", "2*(4*H0_sup/nu + 4*R^2*H1^2/nu + beta3^24*nu^-7*7^7*2^-9*H1^10)/(nu*lambda1)"},
        {"H3^2", std::string("2*((mu/4)*H1^2 + H0_sup/4 + (") + (source_free ? "0" : "1") +
                     "+R^2)/(2k))/(nu*lambda1)"},
        {"H4", "2*((mu/4)*H2 + 4*H0_sup/nu + 4*R^2*H3^2/nu + beta3^24*nu^-7*7^7*2^-9*H3^10)/(nu*lambda1)"},
        {"A0", "(3/4)*(2*beta4)^(4/3)*nu^-1/3*H4^(2/3) + (3/4)*beta4^(4/3)*nu^-1/3*H2^(2/3)"},
        {"A1", "R + (3/4)*beta4^(4/3)*nu^-1/3*H2^(2/3)"},
        {"Q1", "(4*c0^2/nu)*(H4+H3) + R + k*lambda1^-1/2*(H1+H3)*sqrt(H2)"},
    };
    led.notes = {
        "volume gain requirement takes the stricter of the two printed forms (both margins recorded)",
    };
    if (source_free)
        led.notes.push_back("source-free reading: the constant from the source pairing is dropped");
    return led;
}

std::string to_string(PlanFamily f) {
    switch (f) {
        case PlanFamily::obe_l2: return "obe-l2";
        case PlanFamily::obe_h1: return "obe-h1";
        case PlanFamily::bnn_modal_l2: return "bnn-modal-l2";
        case PlanFamily::bnn_modal_h1: return "bnn-modal-h1";
        case PlanFamily::bnn_volume_l2: return "bnn-volume-l2";
    }
    return "?";
}

const std::vector<std::string>& claim_conditions(PlanFamily f) {
    static const std::vector<std::string> obe_l2 = {"l2-sync.gain", "l2-sync.modes"};
    static const std::vector<std::string> obe_h1 = {"h1-sync.gain", "h1-sync.modes"};
    static const std::vector<std::string> ml2 = {"modal-l2.gain", "modal-l2.modes"};
    static const std::vector<std::string> mh1 = {"modal-h1.gain", "modal-h1.modes"};
    static const std::vector<std::string> vol = {"volume.gain", "volume.gain-alt", "volume.modes"};
    switch (f) {
        case PlanFamily::obe_l2: return obe_l2;
        case PlanFamily::obe_h1: return obe_h1;
        case PlanFamily::bnn_modal_l2: return ml2;
        case PlanFamily::bnn_modal_h1: return mh1;
        case PlanFamily::bnn_volume_l2: return vol;
    }
    return obe_l2;
}

namespace {

constexpr int kMaxIterations = 200;
constexpr double kMargin = 0.05;
constexpr double kRelTol = 1e-10;
constexpr double kDivergenceCap = 1e12;

template <typename BoundFn>
double solve_gain_fixed_point(BoundFn&& bound, const std::string& bound_name, int& iterations) {
    double mu = 0.0;
    for (int it = 0; it < kMaxIterations; ++it) {
        const double b = bound(mu);
        const double next = (1.0 + kMargin) * b;
        if (!std::isfinite(next) || next > kDivergenceCap) {
            std::ostringstream msg;
            msg << "gain planning infeasible: " << bound_name
                << " grows faster than mu (iteration " << it << ": mu = " << mu
                << " -> required " << next
                << "); the sufficient conditions admit no gain at these parameters";
            throw InfeasibleError(msg.str(), bound_name, next);
        }
        if (mu > 0.0 && std::abs(next - mu) / mu < kRelTol) {
            iterations = it;
            return next;
        }
        mu = next;
    }
    std::ostringstream msg;
    msg << "gain planning did not converge within " << kMaxIterations
        << " iterations of mu <- 1.05*" << bound_name << " (last mu = " << mu << ")";
    throw InfeasibleError(msg.str(), bound_name, mu);
}

long long smallest_modes(double needed_lambda, bool strict) {
    long long n = 1;
    while (true) {
        const double lam = lambda_of(n + 1);
        if (strict ? lam > needed_lambda : lam >= needed_lambda) return n;
        ++n;
    }
}

}  // namespace

PlanResult plan_gains_obe(const PhysicalParams& p, const InequalityConstants& c,
                          const std::string& target) {
    const bool l2 = (target == "l2");
    if (!l2 && target != "h1")
        throw std::invalid_argument("plan_gains_obe: target must be 'l2' or 'h1'");
    const std::string bound_name = l2 ? "M5" : "Q0";
    PlanResult res;
    res.family = l2 ? PlanFamily::obe_l2 : PlanFamily::obe_h1;
    const auto bound = [&](double mu) {
        const auto led = obe_ledger(p, c, mu, 1);
        return l2 ? led.M5 : led.Q0;
    };
    res.mu = solve_gain_fixed_point(bound, bound_name, res.iterations);
    const double b = bound(res.mu);
    res.n_modes = smallest_modes(4.0 * b / p.nu, false);
    res.ledger = obe_ledger(p, c, res.mu, res.n_modes);
    res.certified_rate = l2 ? res.ledger.d2 : res.ledger.alpha0;
    return res;
}

PlanResult plan_gains_bnn(const PhysicalParams& p, const InequalityConstants& c,
                          double H0, double H0_sup, double xi, PlanFamily family) {
    PlanResult res;
    res.family = family;
    switch (family) {
        case PlanFamily::bnn_modal_l2: {
            const auto bound = [&](double mu) {
                const auto led = bnn_ledger(p, c, H0, H0_sup, mu, 1, xi);
                return led.sigma / 2.0 + p.R + led.A0;
            };
            res.mu = solve_gain_fixed_point(bound, "sigma/2 + R + A0", res.iterations);
            auto led = bnn_ledger(p, c, H0, H0_sup, res.mu, 1, xi);
            res.n_modes =
                smallest_modes(2.0 * (led.sigma + 2.0 * led.A0 + 2.0 * p.R) / p.nu, true);
            res.ledger = bnn_ledger(p, c, H0, H0_sup, res.mu, res.n_modes, xi);
            res.certified_rate = xi;
            return res;
        }
        case PlanFamily::bnn_modal_h1: {
            const auto bound = [&](double mu) {
                const auto led = bnn_ledger(p, c, H0, H0_sup, mu, 1, xi);
                return led.Q1 + led.sigma / 2.0;
            };
            res.mu = solve_gain_fixed_point(bound, "Q1 + sigma/2", res.iterations);
            auto led = bnn_ledger(p, c, H0, H0_sup, res.mu, 1, xi);
            res.n_modes = smallest_modes(2.0 * (led.sigma + 2.0 * led.Q1) / p.nu, true);
            res.ledger = bnn_ledger(p, c, H0, H0_sup, res.mu, res.n_modes, xi);
            res.certified_rate = xi;
            return res;
        }
        case PlanFamily::bnn_volume_l2: {
            const auto led0 = bnn_ledger(p, c, H0, H0_sup, 0.0, 1, xi);
            res.mu = std::max(led0.A1 + led0.sigma / 2.0, led0.sigma + p.R + led0.vol_grad);
            const double n_real = 2.0 * res.mu / (p.nu * std::sqrt(kLambda1));
            res.n_modes = std::max<long long>(1, static_cast<long long>(std::ceil(n_real)));
            // the ceil can sit a rounding error short of the mode condition
            while (p.nu * kLambda1 - 4.0 * res.mu * res.mu /
                                         (p.nu * static_cast<double>(res.n_modes) *
                                          static_cast<double>(res.n_modes)) <
                   0.0)
                ++res.n_modes;
            res.ledger = bnn_ledger(p, c, H0, H0_sup, res.mu, res.n_modes, xi);
            res.certified_rate = res.ledger.sigma + res.ledger.a0;
            return res;
        }
        default:
            throw std::invalid_argument("plan_gains_bnn: family must be a bnn family");
    }
}

std::string CertificateLedger::report() const {
    std::ostringstream os;
    os.precision(12);
    os << "certificate ledger (" << (family == LedgerFamily::obe ? "momentum/channel" : "nonlocal")
       << " system)\n";
    os << "  inputs: nu = " << params.nu << ", R = " << params.R;
    if (family == LedgerFamily::bnn)
        os << ", k = " << params.k << ", xi = " << xi << ", H0 = " << H0
           << ", sup||h||^2 = " << H0_sup;
    os << "\n          mu = " << mu << ", N = " << n_modes << ", lambda_{N+1} = " << lambda_n1
       << "\n          beta3 = " << constants.beta3 << ", beta4 = " << constants.beta4
       << ", c0 = " << constants.c0 << "\n  constants:\n";
    const auto emit = [&os](const char* name, double value) {
        os << "    " << name << " = " << value << "\n";
    };
    if (family == LedgerFamily::obe) {
        emit("d0", d0);
        emit("d1", d1);
        emit("d2", d2);
        emit("alpha0", alpha0);
        emit("M1", M1);
        emit("M2", M2);
        emit("M3", M3);
        emit("M4", M4);
        emit("M5", M5);
        emit("Q0", Q0);
    } else {
        emit("sigma", sigma);
        emit("a0", a0);
        emit("H1^2", H1_sq);
        emit("H2", H2);
        emit("H3^2", H3_sq);
        emit("H4", H4);
        emit("A0", A0);
        emit("A1", A1);
        emit("Q1", Q1);
    }
    os << "  conditions:\n";
    for (const auto& c : conditions)
        os << "    " << (c.satisfied ? "[ok]  " : "[FAIL]") << " " << c.name
           << "  margin = " << c.margin << (c.strict ? "  (strict)" : "") << "\n";
    os << "  formulas:\n";
    for (const auto& [name, formula] : provenance)
        os << "    " << name << " = " << formula << "\n";
    if (!notes.empty()) {
        os << "  reading corrections:\n";
        for (const auto& n : notes) os << "    - " << n << "\n";
    }
    return os.str();
}

}  // namespace burgers
