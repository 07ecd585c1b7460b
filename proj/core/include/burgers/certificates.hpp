#ifndef BURGERS_CERTIFICATES_HPP
#define BURGERS_CERTIFICATES_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "burgers/dynamics.hpp"

namespace burgers {

/// Interpolation-inequality constants. beta4 and c0 have elementary
/// admissible values; beta3 (the L3 bound on the gradient against
/// ||v||^{5/12}||v_xx||^{7/12}) has no clean elementary derivation and is
/// exposed as a knob. These scale certificates only, never the dynamics.
struct InequalityConstants {
    double beta4 = 1.189207115002721;  // 2^(1/4)
    double beta3 = 2.0;
    double c0 = 0.25;

    void validate() const {
        if (!(beta4 > 0.0 && beta3 > 0.0 && c0 > 0.0))
            throw std::invalid_argument("InequalityConstants: all constants must be > 0");
    }
};

struct Condition {
    std::string name;
    double margin = 0.0;   // >= 0 (or > 0 when strict) means satisfied
    bool strict = false;
    bool satisfied = false;
};

enum class LedgerFamily { obe, bnn };

/// Every derived constant of the sufficient-condition chain, with the
/// formula recorded next to the value and the condition margins evaluated
/// at the given (mu, N).
struct CertificateLedger {
    LedgerFamily family = LedgerFamily::obe;

    // inputs
    PhysicalParams params;
    InequalityConstants constants;
    double mu = 0.0;
    long long n_modes = 1;
    double xi = 0.0, H0 = 0.0, H0_sup = 0.0;  // bnn only

    double lambda1 = 0.0, lambda_n1 = 0.0;

    // rates
    double d0 = 0.0, d1 = 0.0, d2 = 0.0, alpha0 = 0.0;  // obe
    double sigma = 0.0, a0 = 0.0;                       // bnn

    // absorbing-ball and coupling constants
    double M1 = 0.0, M2 = 0.0, M3 = 0.0, M4 = 0.0, M5 = 0.0, Q0 = 0.0;    // obe
    double H1_sq = 0.0, H2 = 0.0, H3_sq = 0.0, H4 = 0.0;                  // bnn
    double A0 = 0.0, A1 = 0.0, Q1 = 0.0;                                  // bnn
    double vol_grad = 0.0;  // (3/4) beta4^(4/3) nu^(-1/3) H2^(2/3), shared by A0/A1

    std::vector<Condition> conditions;
    std::vector<std::pair<std::string, std::string>> provenance;  // value -> formula
    std::vector<std::string> notes;  // applied reading corrections

    const Condition* find(const std::string& name) const;
    bool all_satisfied(const std::vector<std::string>& names) const;
    std::string report() const;
};

/// Closed-form evaluation of the momentum/channel chain at a given gain.
CertificateLedger obe_ledger(const PhysicalParams& p, const InequalityConstants& c,
                             double mu, long long n_modes);

/// Closed-form evaluation of the nonlocal chain. Requires xi > lambda1*nu/2
/// (so sigma > 0) and k > 0. `source_free` drops the constant produced by
/// the source pairing (the h = 0 degenerate reading).
CertificateLedger bnn_ledger(const PhysicalParams& p, const InequalityConstants& c,
                             double H0, double H0_sup, double mu, long long n_modes,
                             double xi, bool source_free = false);

enum class PlanFamily { obe_l2, obe_h1, bnn_modal_l2, bnn_modal_h1, bnn_volume_l2 };

std::string to_string(PlanFamily f);

struct PlanResult {
    double mu = 0.0;
    long long n_modes = 1;
    double certified_rate = 0.0;
    PlanFamily family = PlanFamily::obe_l2;
    CertificateLedger ledger;
    int iterations = 0;
};

/// Solves the gain conditions by fixed-point iteration on mu (the bounds
/// depend on mu through the follower absorbing radii): mu <- 1.05 * bound(mu)
/// from mu = 0, to relative change < 1e-10 within 200 iterations, then the
/// smallest N admitted by the mode condition. The bounds grow superlinearly
/// in mu, so a missing fixed point is detected and reported as infeasible
/// rather than looped on.
PlanResult plan_gains_obe(const PhysicalParams& p, const InequalityConstants& c,
                          const std::string& target /* "l2" | "h1" */);

PlanResult plan_gains_bnn(const PhysicalParams& p, const InequalityConstants& c,
                          double H0, double H0_sup, double xi, PlanFamily family);

/// Condition names backing each certified claim.
const std::vector<std::string>& claim_conditions(PlanFamily f);

}  // namespace burgers

#endif
