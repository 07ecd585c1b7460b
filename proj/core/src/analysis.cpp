#include "burgers/analysis.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "burgers/spectral.hpp"

namespace burgers {

RateFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values,
                       double burn_in, double floor) {
    if (times.size() != values.size())
        throw std::invalid_argument("fit_decay_rate: times and values differ in length");

    std::size_t begin = 0;
    while (begin < times.size() && times[begin] < burn_in) ++begin;

    std::size_t end = begin;
    bool floor_hit = false;
    while (end < times.size()) {
        const double y = values[end];
        if (y <= 0.0)
            throw FitDomainError("fit_decay_rate: nonpositive value at t = " +
                                 std::to_string(times[end]) +
                                 "; the series is not a decaying positive quantity");
        if (y < floor) {
            floor_hit = true;
            break;
        }
        ++end;
    }

    const std::size_t n = end - begin;
    if (n < 10)
        throw InsufficientDataError("fit_decay_rate: only " + std::to_string(n) +
                                    " usable samples after burn-in (need 10)");

    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double t = times[i];
        const double y = std::log(values[i]);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double nn = static_cast<double>(n);
    const double denom = nn * stt - st * st;
    if (denom == 0.0) throw FitDomainError("fit_decay_rate: degenerate time window");
    const double slope = (nn * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / nn;

    double ss = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double r = std::log(values[i]) - (intercept + slope * times[i]);
        ss += r * r;
    }

    RateFit fit;
    fit.rate = -slope;
    fit.intercept = intercept;
    fit.t_start = times[begin];
    fit.t_end = times[end - 1];
    fit.residual = std::sqrt(ss / nn);
    fit.floor_hit = floor_hit;
    fit.samples = n;
    return fit;
}

std::string to_string(FitQuantity q) {
    switch (q) {
        case FitQuantity::l2_v_sq: return "l2_v^2";
        case FitQuantity::l2_z_sq: return "l2_z^2";
        case FitQuantity::h1_z_sq: return "h1_z^2";
        case FitQuantity::sync_l2: return "l2_z^2+W^2";
        case FitQuantity::sync_h1: return "0.5*h1_z^2+l2_z^2+W^2";
    }
    return "?";
}

namespace {

const std::vector<double>& need(const std::optional<std::vector<double>>& ch, const char* name) {
    if (!ch.has_value())
        throw Error(std::string("quantity_series: trace has no '") + name + "' channel");
    return *ch;
}

}  // namespace

std::vector<double> quantity_series(const Trace& trace, FitQuantity q) {
    std::vector<double> out(trace.rows());
    switch (q) {
        case FitQuantity::l2_v_sq: {
            const auto& v = need(trace.l2_v, "l2_v");
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = v[i] * v[i];
            break;
        }
        case FitQuantity::l2_z_sq: {
            const auto& z = need(trace.l2_z, "l2_z");
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = z[i] * z[i];
            break;
        }
        case FitQuantity::h1_z_sq: {
            const auto& g = need(trace.h1_z, "h1_z");
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = g[i] * g[i];
            break;
        }
        case FitQuantity::sync_l2: {
            const auto& z = need(trace.l2_z, "l2_z");
            const auto& w = need(trace.W, "W");
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = z[i] * z[i] + w[i] * w[i];
            break;
        }
        case FitQuantity::sync_h1: {
            const auto& z = need(trace.l2_z, "l2_z");
            const auto& g = need(trace.h1_z, "h1_z");
            const auto& w = need(trace.W, "W");
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] = 0.5 * g[i] * g[i] + z[i] * z[i] + w[i] * w[i];
            break;
        }
    }
    return out;
}

std::string to_string(Claim c) {
    switch (c) {
        case Claim::obe_l2: return "obe-l2";
        case Claim::obe_h1: return "obe-h1";
        case Claim::bnn_l2_modal: return "bnn-l2-modal";
        case Claim::bnn_h1_modal: return "bnn-h1-modal";
        case Claim::bnn_l2_volume: return "bnn-l2-volume";
    }
    return "?";
}

double certified_rate(const CertificateLedger& ledger, Claim claim) {
    switch (claim) {
        case Claim::obe_l2: return ledger.d2;
        case Claim::obe_h1: return ledger.alpha0;
        case Claim::bnn_l2_modal:
        case Claim::bnn_h1_modal: return ledger.xi;
        case Claim::bnn_l2_volume: return ledger.sigma + ledger.a0;
    }
    return 0.0;
}

const std::vector<std::string>& conditions_for(Claim claim) {
    switch (claim) {
        case Claim::obe_l2: return claim_conditions(PlanFamily::obe_l2);
        case Claim::obe_h1: return claim_conditions(PlanFamily::obe_h1);
        case Claim::bnn_l2_modal: return claim_conditions(PlanFamily::bnn_modal_l2);
        case Claim::bnn_h1_modal: return claim_conditions(PlanFamily::bnn_modal_h1);
        case Claim::bnn_l2_volume: return claim_conditions(PlanFamily::bnn_volume_l2);
    }
    return claim_conditions(PlanFamily::obe_l2);
}

Verdict compare_to_certificate(const RateFit& fit, const CertificateLedger& ledger, Claim claim,
                               double tolerance) {
    const auto& names = conditions_for(claim);
    if (!ledger.all_satisfied(names)) {
        std::string unmet;
        for (const auto& n : names) {
            const Condition* c = ledger.find(n);
            if (!c || !c->satisfied) {
                if (!unmet.empty()) unmet += ", ";
                unmet += n;
            }
        }
        throw TheoremNotApplicableError("compare_to_certificate: claim " + to_string(claim) +
                                        " is not certified; unsatisfied: " + unmet);
    }
    return rate_verdict(fit, certified_rate(ledger, claim), tolerance);
}

Verdict rate_verdict(const RateFit& fit, double target_rate, double tolerance) {
    Verdict v;
    v.fitted_rate = fit.rate;
    v.certified = target_rate;
    v.tolerance = tolerance;
    v.margin = fit.rate - target_rate;
    v.pass = fit.rate >= target_rate * (1.0 - tolerance);
    return v;
}

long long InequalityReport::total_violations() const {
    long long n = 0;
    for (const auto& c : checks) n += c.violations;
    return n;
}

std::string InequalityReport::to_text() const {
    std::ostringstream os;
    os.precision(6);
    os << "inequality ensemble: " << count << " draws, modes <= " << max_mode << ", grid "
       << grid_points << ", seed " << seed << ", slack " << slack << "\n";
    for (const auto& c : checks)
        os << "  " << (c.violations == 0 ? "[ok]  " : "[FAIL]") << " " << c.name
           << "  violations = " << c.violations << "  worst margin = " << c.worst_margin << "\n";
    os << (total_violations() == 0 ? "all inequalities hold on the ensemble\n"
                                   : "VIOLATIONS FOUND\n");
    return os.str();
}

InequalityReport inequality_ensemble(std::uint64_t seed, int count, int max_mode,
                                     const InequalityConstants& constants, int grid_points,
                                     double slack) {
    if (count < 1) throw std::invalid_argument("inequality_ensemble: count must be >= 1");
    constants.validate();
    const GridSpec grid(grid_points);
    if (max_mode > grid.points / 2)
        throw ResolutionError("inequality_ensemble: max_mode exceeds the resolvable band");

    const ModalBasis basis(grid, max_mode);
    const std::vector<int> tail_counts = {1, 2, 5, 10};

    InequalityReport rep;
    rep.seed = seed;
    rep.count = count;
    rep.max_mode = max_mode;
    rep.grid_points = grid_points;
    rep.slack = slack;

    const double lambda1 = eigenvalue(1);
    std::map<std::string, InequalityCheck> checks;
    const auto tally = [&](const std::string& name, double margin) {
        auto [it, fresh] = checks.try_emplace(name);
        if (fresh) {
            it->second.name = name;
            it->second.worst_margin = margin;
        }
        it->second.worst_margin = std::min(it->second.worst_margin, margin);
        if (margin < -slack) ++it->second.violations;
    };

    std::mt19937_64 eng(seed);
    const auto uniform_pm1 = [&eng]() {
        return 2.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 1.0;
    };

    std::vector<double> coef(static_cast<std::size_t>(max_mode));
    for (int trial = 0; trial < count; ++trial) {
        for (auto& c : coef) c = uniform_pm1();
        GridField u(grid);
        for (int k = 0; k < max_mode; ++k) {
            const auto& w = basis.mode(k);
            const double ck = coef[static_cast<std::size_t>(k)];
            for (int i = 0; i < grid.points; ++i) u[i] += ck * w[static_cast<std::size_t>(i)];
        }

        const double norm_sq = l2_norm_sq(u);
        const double grad = h1_seminorm(u);
        const double grad_sq = grad * grad;
        const auto chat = basis.coeffs(u);

        tally("spectral-gap", grad_sq / lambda1 - norm_sq);

        double resolved = 0.0;
        for (double ck : chat) resolved += ck * ck;
        tally("parseval", norm_sq - resolved);

        const double sup = linf_norm(u);
        tally("sup-norm", constants.c0 * grad_sq - sup * sup);

        const double l4 = l4_norm(u);
        tally("l4-interp",
              constants.beta4 * std::pow(norm_sq, 0.375) * std::pow(grad, 0.25) - l4);

        for (int N : tail_counts) {
            double tail = 0.0;
            for (int k = N; k < max_mode; ++k)
                tail += chat[static_cast<std::size_t>(k)] * chat[static_cast<std::size_t>(k)];
            tally("tail-N" + std::to_string(N), grad_sq / eigenvalue(N + 1) - tail);

            const VolumePartition part(N);
            const auto avgs = volume_averages(u, part);
            const GridField rec = piecewise_reconstruct(avgs, part, grid);
            GridField dev(grid);
            for (int i = 0; i < grid.points; ++i) dev[i] = u[i] - rec[i];
            tally("volume-N" + std::to_string(N), grad / N - l2_norm(dev));
        }
    }

    for (auto& [name, check] : checks) rep.checks.push_back(check);
    return rep;
}

}  // namespace burgers
