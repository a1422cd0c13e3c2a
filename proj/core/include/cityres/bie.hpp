#pragma once

// Nystrom solver for the single-layer equations on the building foundations.
//
// On each foundation [a_j, b_j] the density is written psi = phi / sqrt((s-a)(b-s))
// and mapped to t in [-1, 1], so every block integral reads
//   int_{-1}^{1} kernel(x - g_j(t)) phi(g_j(t)) / sqrt(1 - t^2) dt.
// Unknowns are phi at the 2M Chebyshev points of the first kind; collocation
// points coincide with the quadrature nodes.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "cityres/linalg.hpp"

namespace cityres::bie {

using Complex = std::complex<double>;

/// Smallest gap accepted between two distinct foundations.
inline constexpr double kMinSeparation = 1e-6;

struct Foundation {
  double a;
  double b;
};

/// 2M first-kind Chebyshev points t_m = cos((2m-1) pi / (4M)), m = 1..2M.
std::vector<double> chebyshev_nodes(int M);

/// Product-quadrature weights W(l, m) such that
///   int ln|t_l - t| f(t) / sqrt(1 - t^2) dt ~= sum_m W(l, m) f(t_m),
/// exact when f is a polynomial of degree < 2M.
RealMatrix log_product_weights(int M);

/// Foundations and the shared Chebyshev mesh.
class FoundationGrid {
 public:
  /// Throws ValidationError for empty input, a >= b, M < 1, or foundations
  /// closer than kMinSeparation.
  FoundationGrid(std::vector<Foundation> foundations, int M);

  int M() const noexcept { return M_; }
  std::size_t nodes_per_building() const noexcept { return nodes_.size(); }
  std::size_t buildings() const noexcept { return foundations_.size(); }
  std::size_t unknowns() const noexcept { return buildings() * nodes_per_building(); }

  const std::vector<Foundation>& foundations() const noexcept { return foundations_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  const RealMatrix& log_weights() const noexcept { return log_weights_; }

  double half_length(std::size_t j) const;
  double center(std::size_t j) const;
  /// g_j(t_m).
  double point(std::size_t j, std::size_t m) const;

 private:
  std::vector<Foundation> foundations_;
  int M_;
  std::vector<double> nodes_;
  RealMatrix log_weights_;
};

/// Free half-plane kernel, or the periodic kernel with period 2P.
struct KernelMode {
  std::optional<double> half_period;

  static KernelMode free() { return {}; }
  static KernelMode periodic(double half_period) { return {half_period}; }
  bool is_periodic() const noexcept { return half_period.has_value(); }
};

/// Dense collocation matrix K with K phi = (alpha_k on the rows of building k).
///
/// Off-diagonal blocks use Gauss-Chebyshev weights pi/(2M). Diagonal blocks
/// split the kernel as A(z) ln|t_l - t_m| (product quadrature) plus a smooth
/// part (Gauss-Chebyshev). In periodic mode every block uses G_per and the
/// foundations must fit inside one period.
ComplexMatrix assemble(const FoundationGrid& grid, double xi, const KernelMode& mode);

/// Density values phi_j(g_j(t_m)) for one boundary-data vector alpha.
struct DensitySolution {
  double xi = 0.0;
  FoundationGrid grid;
  KernelMode mode;
  std::vector<double> alpha;
  std::vector<std::vector<Complex>> phi;  ///< phi[j][m]
  double residual = 0.0;                  ///< ||K phi - rhs||_inf
};

/// Factorized collocation system at one wavenumber; reused for many alphas.
class CollocationSystem {
 public:
  CollocationSystem(FoundationGrid grid, double xi, KernelMode mode);

  const FoundationGrid& grid() const noexcept { return grid_; }
  double xi() const noexcept { return xi_; }
  const KernelMode& mode() const noexcept { return mode_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  DensitySolution solve(std::span<const double> alpha) const;

  /// F(k, l) = foundation_force on building k of the solution with alpha = e_l.
  /// One factorization, N right-hand sides.
  RealMatrix force_matrix() const;

 private:
  FoundationGrid grid_;
  double xi_;
  KernelMode mode_;
  ComplexMatrix matrix_;
  LuFactorization lu_;
};

/// LU-solves K phi = rhs(alpha); throws SingularSystemError if K is
/// numerically singular or the residual exceeds 1e-10 ||alpha||.
DensitySolution solve_density(const ComplexMatrix& k, const FoundationGrid& grid, double xi,
                              const KernelMode& mode, std::span<const double> alpha);

/// Re int_{Gamma_j} dPsi/dy ds = -(1/2) Re int psi ds = -(1/2)(pi/2M) sum_m Re phi_j(t_m).
double foundation_force(const DensitySolution& sol, std::size_t j);

/// Layer potential Psi(x, y) for y > 0.
Complex evaluate_field(const DensitySolution& sol, double x, double y);

}  // namespace cityres::bie
