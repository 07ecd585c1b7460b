#ifndef BURGERS_DYNAMICS_HPP
#define BURGERS_DYNAMICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "burgers/grid.hpp"

namespace burgers {

struct PhysicalParams {
    double nu = 1.0;  // kinematic viscosity
    double R = 1.0;   // pressure constant
    double k = 1.0;   // nonlocal coefficient (BNN family only)

    // R = 0 and k <= 0 are admitted for raw integration (linearization checks
    // and the unstable nonlocal sign); the certificate chain separately
    // requires k > 0 where it divides by it.
    void validate(bool /*nonlocal_used*/) const {
        if (!(nu > 0.0)) throw std::invalid_argument("PhysicalParams: nu must be > 0");
        if (R < 0.0) throw std::invalid_argument("PhysicalParams: R must be >= 0");
    }
};

/// Source term h(t,x) of the nonlocal system. `mms` is the forcing that makes
/// v(x,t) = exp(-t) sin(pi x) an exact solution; `sampled` is a fixed profile.
struct SourceTerm {
    enum class Kind { zero, mms, sampled };
    Kind kind = Kind::zero;
    std::vector<double> profile;  // sampled kind; length must match the grid

    bool is_zero() const { return kind == Kind::zero; }
    GridField eval(double t, GridSpec grid, const PhysicalParams& p) const;
};

/// Exact field of the manufactured solution exp(-t) sin(pi x).
GridField mms_exact(double t, GridSpec grid);

enum class Scheme { imex_cn_ab2, imex_be_fe };

std::string to_string(Scheme s);

struct StepperConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::imex_cn_ab2;
    double cfl_safety = 0.25;  // in (0, 1]
    bool linearized = false;   // test hook: drop the advective term

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("StepperConfig: dt must be > 0");
        if (!(cfl_safety > 0.0) || cfl_safety > 1.0)
            throw std::invalid_argument("StepperConfig: cfl_safety must be in (0,1]");
    }
};

struct ObeState {
    double t = 0.0;
    GridField v;
    double U = 0.0;
};

struct BnnState {
    double t = 0.0;
    GridField v;
};

/// Second-order centered Laplacian with implicit Dirichlet zeros.
GridField laplacian(const GridField& v);

/// Conservative advection term d/dx(v^2), centered, implicit zeros.
GridField advection_dxsq(const GridField& v);

/// Full right-hand side of the momentum/channel system:
///   dv/dt = U v + nu v_xx - d/dx(v^2) + control,  dU/dt = R - nu U - ||v||^2
struct ObeRhs {
    GridField dv;
    double dU;
};
ObeRhs rhs_obe(const ObeState& s, const PhysicalParams& p,
               const GridField* control = nullptr);

/// Right-hand side of the nonlocal system:
///   dv/dt = nu v_xx - d/dx(v^2) + R v - k ||v||^2 v + h + control
GridField rhs_bnn(const BnnState& s, const PhysicalParams& p, const GridField& h_field,
                  const GridField* control = nullptr);

/// Largest stable step for the explicit terms under the IMEX split. Advective
/// speed 2|v| against the grid, relaxed by the implicitly damped diffusive
/// range nu/speed^2 (an advective-only bound would reject smooth runs that
/// the implicit diffusion in fact stabilizes).
double admissible_dt(GridSpec grid, double nu, double max_abs_v, double cfl_safety);

bool all_finite(const GridField& v);

/// One IMEX trajectory: diffusion implicit (Crank-Nicolson or backward
/// Euler), everything else explicit (AB2 after the first step for cn_ab2,
/// forward Euler for be_fe). The scalar channel uses the same explicit
/// multistep. The caller evaluates the explicit terms from the current state
/// and passes them in.
class ImexIntegrator {
  public:
    ImexIntegrator(GridSpec grid, double nu, const StepperConfig& cfg);

    void step(GridField& v, double& U, const GridField& explicit_field, double explicit_scalar);
    void reset_history();

  private:
    GridSpec grid_;
    double nu_, dt_;
    Scheme scheme_;
    double gamma_;                      // implicit weight * nu * dt / dx^2
    std::vector<double> diag_, elim_;   // prefactored Thomas sweep
    bool have_prev_ = false;
    std::vector<double> prev_field_;
    double prev_scalar_ = 0.0;
    std::vector<double> rhs_;

    void factor();
    void solve_inplace(std::vector<double>& b) const;
};

}  // namespace burgers

#endif
