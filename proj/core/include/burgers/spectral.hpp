#ifndef BURGERS_SPECTRAL_HPP
#define BURGERS_SPECTRAL_HPP

#include <vector>

#include "burgers/grid.hpp"

namespace burgers {

/// k-th Dirichlet eigenvalue of -d^2/dx^2 on (0,1): (k*pi)^2.
double eigenvalue(long long k);

/// Eigenpair of -d^2/dx^2 under homogeneous Dirichlet conditions:
/// lambda_k = (k*pi)^2 with L2-normalized eigenfunction sqrt(2)*sin(k*pi*x).
struct EigenPair {
    int index;
    double lambda;
    GridField eigenfunction;
};

/// Sampled eigenpair. Requires 1 <= k <= M/2 so the mode is resolvable.
EigenPair eigenpair(int k, GridSpec grid);

/// Composite trapezoidal inner product; with zero endpoint values this is
/// the rectangle sum dx * sum_i a_i b_i, under which the sampled sine modes
/// w_1..w_M are exactly orthonormal.
double l2_inner(const GridField& a, const GridField& b);
double l2_norm_sq(const GridField& a);
double l2_norm(const GridField& a);

/// Discrete L2 norm of the first difference: centered in the interior,
/// one-sided at the boundary using the implicit zeros, trapezoid-weighted.
/// For the sine modes this evaluates to k*pi*sinc(k*pi*dx), an O(dx^2)
/// approximation of ||w_k'|| = k*pi.
double h1_seminorm(const GridField& a);

double linf_norm(const GridField& a);
double l4_norm(const GridField& a);

/// First N sine coefficients (a, w_k), k = 1..N, by direct summation.
/// Requires N <= M/2.
std::vector<double> modal_coeffs(const GridField& a, int n_modes);

/// Sum of coeffs[k-1] * w_k sampled on the grid.
GridField modal_reconstruct(const std::vector<double>& coeffs, GridSpec grid);

/// Equal partition of [0,1] into N subintervals J_k = [(k-1)/N, k/N),
/// the last one closed at 1.
struct VolumePartition {
    int count = 0;

    explicit VolumePartition(int n) : count(n) {
        if (count < 1) throw std::invalid_argument("VolumePartition: count must be >= 1");
    }
    double width() const { return 1.0 / count; }
};

/// Zero-based partition index of interior node i (exact integer arithmetic;
/// nodes on an interval boundary belong to the interval they open).
int partition_index(int node, int interior_points, int count);

/// Per-interval mean of the nodal values. This is the discrete least-squares
/// constant on each interval, so reconstruct(averages(.)) is the orthogonal
/// projection onto interval-wise constants in the discrete inner product.
/// Requires N <= M/4 (at least a few nodes per interval).
std::vector<double> volume_averages(const GridField& a, const VolumePartition& part);

/// Step function sum_k avgs_k * chi_{J_k} sampled on the grid.
GridField piecewise_reconstruct(const std::vector<double>& avgs,
                                const VolumePartition& part, GridSpec grid);

/// Cached sampled sine basis for repeated modal transforms (O(M*N) each).
class ModalBasis {
  public:
    ModalBasis(GridSpec grid, int n_modes);

    int modes() const { return n_modes_; }
    const std::vector<double>& mode(int k) const;  // k in [0, modes)

    std::vector<double> coeffs(const GridField& a) const;
    GridField reconstruct(const std::vector<double>& coeffs) const;

  private:
    GridSpec grid_;
    int n_modes_;
    std::vector<std::vector<double>> basis_;
};

}  // namespace burgers

#endif
