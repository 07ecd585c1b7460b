#ifndef BURGERS_ANALYSIS_HPP
#define BURGERS_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "burgers/certificates.hpp"
#include "burgers/trace.hpp"

namespace burgers {

/// Log-linear least-squares fit of a decaying quantity. The fitted rate is
/// for the quantity as passed in; the synchronization theorems bound squared
/// norms, so fits run on the squared channels and the reported rate compares
/// directly against the certified exponent (no factor-2 adjustment).
struct RateFit {
    double rate = 0.0;       // positive decay constant per unit time
    double intercept = 0.0;  // log-value of the fit at t = 0
    double t_start = 0.0, t_end = 0.0;
    double residual = 0.0;  // RMS of the log-linear fit
    bool floor_hit = false;
    std::size_t samples = 0;
};

/// Fits log(values) vs t over [burn_in, first sample below floor or end).
/// Needs at least 10 usable samples. The floor keeps scheme/roundoff noise
/// from biasing the rate toward zero once synchronization bottoms out.
RateFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values,
                       double burn_in, double floor = 1e-12);

/// Named channel combinations the theorems bound.
enum class FitQuantity {
    l2_v_sq,    // ||v||^2
    l2_z_sq,    // ||z||^2
    h1_z_sq,    // ||dx z||^2
    sync_l2,    // ||z||^2 + W^2
    sync_h1,    // 0.5*||dx z||^2 + ||z||^2 + W^2
};

std::string to_string(FitQuantity q);
std::vector<double> quantity_series(const Trace& trace, FitQuantity q);

enum class Claim { obe_l2, obe_h1, bnn_l2_modal, bnn_h1_modal, bnn_l2_volume };

std::string to_string(Claim c);
double certified_rate(const CertificateLedger& ledger, Claim claim);
const std::vector<std::string>& conditions_for(Claim claim);

struct Verdict {
    bool pass = false;
    double fitted_rate = 0.0;
    double certified = 0.0;
    double margin = 0.0;  // fitted - certified
    double tolerance = 0.1;
};

/// Pass iff fit.rate >= certified * (1 - tolerance). Throws
/// TheoremNotApplicableError when the ledger conditions backing the claim
/// are unsatisfied.
Verdict compare_to_certificate(const RateFit& fit, const CertificateLedger& ledger, Claim claim,
                               double tolerance = 0.1);

/// Rate-vs-target comparison without the applicability gate (sweep summaries
/// report this alongside a conditions flag).
Verdict rate_verdict(const RateFit& fit, double target_rate, double tolerance = 0.1);

struct InequalityCheck {
    std::string name;
    long long violations = 0;
    double worst_margin = 0.0;  // min over draws of (bound - value + slack margin)
};

struct InequalityReport {
    std::uint64_t seed = 0;
    int count = 0;
    int max_mode = 0;
    int grid_points = 0;
    double slack = 0.0;
    std::vector<InequalityCheck> checks;

    long long total_violations() const;
    std::string to_text() const;
};

/// Draws seeded random sine polynomials (coefficients uniform in [-1,1],
/// modes <= max_mode) and checks the functional inequalities the
/// certificates rely on: the spectral-gap bound, the tail bound for
/// N in {1,2,5,10}, the volume-element approximation bound, resolved-mode
/// Parseval, the sup-norm bound with c0, and the L4 interpolation bound
/// with beta4. Violations beyond `slack` are counted.
InequalityReport inequality_ensemble(std::uint64_t seed, int count, int max_mode,
                                     const InequalityConstants& constants,
                                     int grid_points = 512, double slack = 1e-8);

}  // namespace burgers

#endif
