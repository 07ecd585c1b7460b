#include "burgers/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "burgers/spectral.hpp"

namespace burgers {

namespace {
constexpr double kPi = std::numbers::pi;
}

GridField SourceTerm::eval(double t, GridSpec grid, const PhysicalParams& p) const {
    switch (kind) {
        case Kind::zero:
            return GridField(grid);
        case Kind::mms: {
            GridField h(grid);
            const double a1 = std::exp(-t) * (p.nu * kPi * kPi - 1.0 - p.R);
            const double a2 = kPi * std::exp(-2.0 * t);
            const double a3 = 0.5 * p.k * std::exp(-3.0 * t);
            for (int i = 0; i < grid.points; ++i) {
                const double x = grid.node(i);
                h[i] = (a1 + a3) * std::sin(kPi * x) + a2 * std::sin(2.0 * kPi * x);
            }
            return h;
        }
        case Kind::sampled: {
            if (static_cast<int>(profile.size()) != grid.points)
                throw ShapeError("SourceTerm: sampled profile has " +
                                 std::to_string(profile.size()) + " values for a grid of " +
                                 std::to_string(grid.points));
            return GridField(grid, profile);
        }
    }
    return GridField(grid);
}

GridField mms_exact(double t, GridSpec grid) {
    GridField v(grid);
    const double a = std::exp(-t);
    for (int i = 0; i < grid.points; ++i) v[i] = a * std::sin(kPi * grid.node(i));
    return v;
}

std::string to_string(Scheme s) {
    return s == Scheme::imex_cn_ab2 ? "imex-cn-ab2" : "imex-be-fe";
}

GridField laplacian(const GridField& v) {
    const int m = v.size();
    const double inv_dx2 = 1.0 / (v.grid.spacing() * v.grid.spacing());
    GridField out(v.grid);
    for (int i = 0; i < m; ++i) {
        const double lo = (i == 0) ? 0.0 : v[i - 1];
        const double hi = (i == m - 1) ? 0.0 : v[i + 1];
        out[i] = (lo - 2.0 * v[i] + hi) * inv_dx2;
    }
    return out;
}

GridField advection_dxsq(const GridField& v) {
    const int m = v.size();
    const double inv_2dx = 0.5 / v.grid.spacing();
    GridField out(v.grid);
    for (int i = 0; i < m; ++i) {
        const double lo = (i == 0) ? 0.0 : v[i - 1] * v[i - 1];
        const double hi = (i == m - 1) ? 0.0 : v[i + 1] * v[i + 1];
        out[i] = (hi - lo) * inv_2dx;
    }
    return out;
}

bool all_finite(const GridField& v) {
    for (int i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i])) return false;
    return true;
}

ObeRhs rhs_obe(const ObeState& s, const PhysicalParams& p, const GridField* control) {
    if (!all_finite(s.v) || !std::isfinite(s.U))
        throw DivergenceError("rhs_obe: non-finite state", s.t);
    GridField dv = laplacian(s.v);
    const GridField adv = advection_dxsq(s.v);
    for (int i = 0; i < s.v.size(); ++i) {
        dv[i] = s.U * s.v[i] + p.nu * dv[i] - adv[i];
        if (control) dv[i] += (*control)[i];
    }
    const double dU = p.R - p.nu * s.U - l2_norm_sq(s.v);
    return ObeRhs{std::move(dv), dU};
}

GridField rhs_bnn(const BnnState& s, const PhysicalParams& p, const GridField& h_field,
                  const GridField* control) {
    if (!all_finite(s.v)) throw DivergenceError("rhs_bnn: non-finite state", s.t);
    require_same_grid(s.v, h_field, "rhs_bnn");
    GridField dv = laplacian(s.v);
    const GridField adv = advection_dxsq(s.v);
    const double nrm_sq = l2_norm_sq(s.v);
    for (int i = 0; i < s.v.size(); ++i) {
        dv[i] = p.nu * dv[i] - adv[i] + p.R * s.v[i] - p.k * nrm_sq * s.v[i] + h_field[i];
        if (control) dv[i] += (*control)[i];
    }
    return dv;
}

double admissible_dt(GridSpec grid, double nu, double max_abs_v, double cfl_safety) {
    const double speed = std::max(1.0, 2.0 * max_abs_v);
    return cfl_safety * std::max(grid.spacing() / speed, nu / (speed * speed));
}

ImexIntegrator::ImexIntegrator(GridSpec grid, double nu, const StepperConfig& cfg)
    : grid_(grid), nu_(nu), dt_(cfg.dt), scheme_(cfg.scheme) {
    cfg.validate();
    const double dx2 = grid.spacing() * grid.spacing();
    const double w = (scheme_ == Scheme::imex_cn_ab2) ? 0.5 : 1.0;
    gamma_ = w * nu_ * dt_ / dx2;
    factor();
    rhs_.resize(static_cast<std::size_t>(grid.points));
}

void ImexIntegrator::factor() {
    const int m = grid_.points;
    diag_.assign(static_cast<std::size_t>(m), 0.0);
    elim_.assign(static_cast<std::size_t>(m), 0.0);
    const double d = 1.0 + 2.0 * gamma_;
    const double off = -gamma_;
    diag_[0] = d;
    for (int i = 1; i < m; ++i) {
        elim_[static_cast<std::size_t>(i)] = off / diag_[static_cast<std::size_t>(i - 1)];
        diag_[static_cast<std::size_t>(i)] = d - off * elim_[static_cast<std::size_t>(i)];
    }
}

void ImexIntegrator::solve_inplace(std::vector<double>& b) const {
    const int m = grid_.points;
    const double off = -gamma_;
    for (int i = 1; i < m; ++i)
        b[static_cast<std::size_t>(i)] -= elim_[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i - 1)];
    b[static_cast<std::size_t>(m - 1)] /= diag_[static_cast<std::size_t>(m - 1)];
    for (int i = m - 2; i >= 0; --i)
        b[static_cast<std::size_t>(i)] =
            (b[static_cast<std::size_t>(i)] - off * b[static_cast<std::size_t>(i + 1)]) /
            diag_[static_cast<std::size_t>(i)];
}

void ImexIntegrator::reset_history() { have_prev_ = false; }

void ImexIntegrator::step(GridField& v, double& U, const GridField& explicit_field,
                          double explicit_scalar) {
    const int m = grid_.points;
    const bool ab2 = (scheme_ == Scheme::imex_cn_ab2) && have_prev_;

    for (int i = 0; i < m; ++i) {
        double rhs = v[i];
        if (scheme_ == Scheme::imex_cn_ab2) {
            const double lo = (i == 0) ? 0.0 : v[i - 1];
            const double hi = (i == m - 1) ? 0.0 : v[i + 1];
            rhs += gamma_ * (lo - 2.0 * v[i] + hi);
        }
        const double e = ab2 ? 1.5 * explicit_field[i] - 0.5 * prev_field_[static_cast<std::size_t>(i)]
                             : explicit_field[i];
        rhs_[static_cast<std::size_t>(i)] = rhs + dt_ * e;
    }
    solve_inplace(rhs_);
    for (int i = 0; i < m; ++i) v[i] = rhs_[static_cast<std::size_t>(i)];

    const double g = ab2 ? 1.5 * explicit_scalar - 0.5 * prev_scalar_ : explicit_scalar;
    U += dt_ * g;

    if (scheme_ == Scheme::imex_cn_ab2) {
        prev_field_.assign(explicit_field.values.begin(), explicit_field.values.end());
        prev_scalar_ = explicit_scalar;
        have_prev_ = true;
    }
}

}  // namespace burgers
