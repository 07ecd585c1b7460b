#include "burgers/spectral.hpp"

#include <cmath>
#include <numbers>

namespace burgers {

namespace {
constexpr double kPi = std::numbers::pi;
}

double eigenvalue(long long k) {
    const double kpi = static_cast<double>(k) * kPi;
    return kpi * kpi;
}

EigenPair eigenpair(int k, GridSpec grid) {
    const int max_k = grid.points / 2;
    if (k < 1 || k > max_k)
        throw ResolutionError("eigenpair: mode " + std::to_string(k) +
                              " not resolvable; admissible range is 1.." +
                              std::to_string(max_k) + " on " +
                              std::to_string(grid.points) + " interior points");
    GridField w(grid);
    const double root2 = std::sqrt(2.0);
    for (int i = 0; i < grid.points; ++i)
        w[i] = root2 * std::sin(k * kPi * grid.node(i));
    return EigenPair{k, eigenvalue(k), std::move(w)};
}

double l2_inner(const GridField& a, const GridField& b) {
    require_same_grid(a, b, "l2_inner");
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s * a.grid.spacing();
}

double l2_norm_sq(const GridField& a) {
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += a[i] * a[i];
    return s * a.grid.spacing();
}

double l2_norm(const GridField& a) { return std::sqrt(l2_norm_sq(a)); }

double h1_seminorm(const GridField& a) {
    const int m = a.size();
    const double dx = a.grid.spacing();
    const double g_left = a[0] / dx;
    const double g_right = -a[m - 1] / dx;
    double s = 0.5 * (g_left * g_left + g_right * g_right);
    for (int i = 0; i < m; ++i) {
        const double lo = (i == 0) ? 0.0 : a[i - 1];
        const double hi = (i == m - 1) ? 0.0 : a[i + 1];
        const double g = (hi - lo) / (2.0 * dx);
        s += g * g;
    }
    return std::sqrt(s * dx);
}

double linf_norm(const GridField& a) {
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

double l4_norm(const GridField& a) {
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        const double sq = a[i] * a[i];
        s += sq * sq;
    }
    return std::pow(s * a.grid.spacing(), 0.25);
}

std::vector<double> modal_coeffs(const GridField& a, int n_modes) {
    ModalBasis basis(a.grid, n_modes);
    return basis.coeffs(a);
}

GridField modal_reconstruct(const std::vector<double>& coeffs, GridSpec grid) {
    ModalBasis basis(grid, static_cast<int>(coeffs.size()));
    return basis.reconstruct(coeffs);
}

int partition_index(int node, int interior_points, int count) {
    // x_i * N = (node+1) * N / (M+1); integer division gives floor exactly.
    const long long num = static_cast<long long>(node + 1) * count;
    return static_cast<int>(num / (interior_points + 1));
}

std::vector<double> volume_averages(const GridField& a, const VolumePartition& part) {
    const int m = a.size();
    if (part.count > m / 4)
        throw ResolutionError("volume_averages: partition of " + std::to_string(part.count) +
                              " intervals too fine for " + std::to_string(m) +
                              " interior points; need count <= M/4 = " + std::to_string(m / 4));
    std::vector<double> sum(part.count, 0.0);
    std::vector<int> nodes(part.count, 0);
    for (int i = 0; i < m; ++i) {
        const int b = partition_index(i, m, part.count);
        sum[b] += a[i];
        ++nodes[b];
    }
    for (int b = 0; b < part.count; ++b) sum[b] /= nodes[b];
    return sum;
}

GridField piecewise_reconstruct(const std::vector<double>& avgs,
                                const VolumePartition& part, GridSpec grid) {
    if (static_cast<int>(avgs.size()) != part.count)
        throw ShapeError("piecewise_reconstruct: " + std::to_string(avgs.size()) +
                         " averages for a partition of " + std::to_string(part.count));
    GridField out(grid);
    for (int i = 0; i < grid.points; ++i)
        out[i] = avgs[partition_index(i, grid.points, part.count)];
    return out;
}

ModalBasis::ModalBasis(GridSpec grid, int n_modes) : grid_(grid), n_modes_(n_modes) {
    if (n_modes < 0 || n_modes > grid.points / 2)
        throw ResolutionError("modal transform: " + std::to_string(n_modes) +
                              " modes exceed the resolvable band, max " +
                              std::to_string(grid.points / 2) + " on " +
                              std::to_string(grid.points) + " interior points");
    basis_.reserve(n_modes);
    const double root2 = std::sqrt(2.0);
    for (int k = 1; k <= n_modes; ++k) {
        std::vector<double> w(grid.points);
        for (int i = 0; i < grid.points; ++i)
            w[static_cast<std::size_t>(i)] = root2 * std::sin(k * kPi * grid.node(i));
        basis_.push_back(std::move(w));
    }
}

const std::vector<double>& ModalBasis::mode(int k) const { return basis_[static_cast<std::size_t>(k)]; }

std::vector<double> ModalBasis::coeffs(const GridField& a) const {
    if (!(a.grid == grid_)) throw ShapeError("ModalBasis::coeffs: grid mismatch");
    std::vector<double> c(static_cast<std::size_t>(n_modes_));
    const double dx = grid_.spacing();
    for (int k = 0; k < n_modes_; ++k) {
        const auto& w = basis_[static_cast<std::size_t>(k)];
        double s = 0.0;
        for (int i = 0; i < grid_.points; ++i) s += a[i] * w[static_cast<std::size_t>(i)];
        c[static_cast<std::size_t>(k)] = s * dx;
    }
    return c;
}

GridField ModalBasis::reconstruct(const std::vector<double>& coeffs) const {
    if (static_cast<int>(coeffs.size()) > n_modes_)
        throw ShapeError("ModalBasis::reconstruct: more coefficients than cached modes");
    GridField out(grid_);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const auto& w = basis_[k];
        const double c = coeffs[k];
        for (int i = 0; i < grid_.points; ++i) out[i] += c * w[static_cast<std::size_t>(i)];
    }
    return out;
}

}  // namespace burgers
