#include "cityres/bie.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "cityres/error.hpp"
#include "cityres/greens.hpp"
#include "cityres/parallel.hpp"
#include "cityres/specfun.hpp"

namespace cityres::bie {

using specfun::kPi;

namespace {

// Chebyshev coefficients of the degree-(K-1) interpolant through f(t_m).
std::vector<double> chebyshev_coefficients(std::span<const double> values) {
  const std::size_t K = values.size();
  std::vector<double> c(K, 0.0);
  for (std::size_t n = 0; n < K; ++n) {
    double acc = 0.0;
    for (std::size_t m = 0; m < K; ++m) {
      const double theta = (2.0 * static_cast<double>(m) + 1.0) * kPi / (2.0 * static_cast<double>(K));
      acc += values[m] * std::cos(static_cast<double>(n) * theta);
    }
    c[n] = (n == 0 ? 1.0 : 2.0) * acc / static_cast<double>(K);
  }
  return c;
}

template <typename T>
T clenshaw(std::span<const T> coeff, double t) {
  T b1{}, b2{};
  for (std::size_t n = coeff.size(); n-- > 1;) {
    const T b0 = 2.0 * t * b1 - b2 + coeff[n];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + coeff[0];
}

void check_periodic_fit(const FoundationGrid& grid, double half_period) {
  const auto& f = grid.foundations();
  double lo = f.front().a;
  double hi = f.front().b;
  for (const auto& fd : f) {
    lo = std::min(lo, fd.a);
    hi = std::max(hi, fd.b);
  }
  if (hi - lo > 2.0 * half_period - kMinSeparation) {
    std::ostringstream os;
    os << "periodic mode: foundations span " << hi - lo << " which does not fit in period "
       << 2.0 * half_period;
    throw ValidationError(os.str());
  }
}

}  // namespace

std::vector<double> chebyshev_nodes(int M) {
  if (M < 1) throw ValidationError("chebyshev_nodes: M must be positive");
  const int K = 2 * M;
  std::vector<double> t(static_cast<std::size_t>(K));
  for (int m = 1; m <= K; ++m) t[static_cast<std::size_t>(m - 1)] = std::cos((2.0 * m - 1.0) * kPi / (2.0 * K));
  return t;
}

RealMatrix log_product_weights(int M) {
  // int ln|x - t| T_n(t) / sqrt(1 - t^2) dt = -pi ln 2 (n = 0), -pi T_n(x) / n (n >= 1).
  const int K = 2 * M;
  RealMatrix w(static_cast<std::size_t>(K), static_cast<std::size_t>(K));
  for (int l = 0; l < K; ++l) {
    const double theta_l = (2.0 * l + 1.0) * kPi / (2.0 * K);
    for (int m = 0; m < K; ++m) {
      const double theta_m = (2.0 * m + 1.0) * kPi / (2.0 * K);
      double s = -kPi * std::log(2.0) / K;
      for (int n = 1; n < K; ++n) {
        s += (2.0 / K) * std::cos(n * theta_m) * (-kPi * std::cos(n * theta_l) / n);
      }
      w(static_cast<std::size_t>(l), static_cast<std::size_t>(m)) = s;
    }
  }
  return w;
}

FoundationGrid::FoundationGrid(std::vector<Foundation> foundations, int M)
    : foundations_(std::move(foundations)), M_(M) {
  if (foundations_.empty()) throw ValidationError("FoundationGrid: no foundations");
  if (M < 1) throw ValidationError("FoundationGrid: M must be positive");
  for (std::size_t j = 0; j < foundations_.size(); ++j) {
    const auto& f = foundations_[j];
    if (!std::isfinite(f.a) || !std::isfinite(f.b) || !(f.a < f.b)) {
      std::ostringstream os;
      os << "FoundationGrid: building " << j + 1 << " needs a < b (got [" << f.a << ", " << f.b << "])";
      throw ValidationError(os.str());
    }
  }
  std::vector<std::size_t> order(foundations_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return foundations_[i].a < foundations_[j].a; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const auto& left = foundations_[order[k - 1]];
    const auto& right = foundations_[order[k]];
    if (right.a - left.b < kMinSeparation) {
      std::ostringstream os;
      os << "FoundationGrid: buildings " << order[k - 1] + 1 << " and " << order[k] + 1
         << " overlap or touch";
      throw ValidationError(os.str());
    }
  }
  nodes_ = chebyshev_nodes(M);
  log_weights_ = log_product_weights(M);
}

double FoundationGrid::half_length(std::size_t j) const {
  const auto& f = foundations_.at(j);
  return 0.5 * (f.b - f.a);
}

double FoundationGrid::center(std::size_t j) const {
  const auto& f = foundations_.at(j);
  return 0.5 * (f.b + f.a);
}

double FoundationGrid::point(std::size_t j, std::size_t m) const {
  return half_length(j) * nodes_[m] + center(j);
}

ComplexMatrix assemble(const FoundationGrid& grid, double xi, const KernelMode& mode) {
  if (!(xi > 0.0)) throw DomainError("assemble: wavenumber must be positive");
  const std::size_t K = grid.nodes_per_building();
  const std::size_t N = grid.buildings();
  const double weight = kPi / static_cast<double>(K);
  const auto nodes = grid.nodes();
  const auto& logw = grid.log_weights();

  std::optional<greens::PeriodicCell> cell;
  greens::EwaldConfig cfg;
  if (mode.is_periodic()) {
    check_periodic_fit(grid, *mode.half_period);
    cell.emplace(*mode.half_period, xi);
    cfg = greens::ewald_for(*cell);
  }

  std::vector<double> points(N * K);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t m = 0; m < K; ++m) points[j * K + m] = grid.point(j, m);

  ComplexMatrix mat(N * K, N * K);
  parallel_for(0, N * K, [&](std::size_t row) {
    const std::size_t k = row / K;
    const std::size_t l = row % K;
    const double x = points[row];
    auto out = mat.row(row);
    for (std::size_t j = 0; j < N; ++j) {
      if (j != k) {
        for (std::size_t m = 0; m < K; ++m) {
          const double dx = x - points[j * K + m];
          out[j * K + m] = weight * (cell ? greens::gper_ewald(*cell, dx, 0.0, cfg)
                                          : greens::kernel_free(xi, dx, 0.0));
        }
        continue;
      }
      const double h = grid.half_length(j);
      const double log_scale = std::log(0.5 * xi * h);
      for (std::size_t m = 0; m < K; ++m) {
        const double dt = nodes[l] - nodes[m];
        const double z = xi * h * std::fabs(dt);
        const double a_val = greens::split_A(z);
        const Complex smooth = cell ? greens::btilde(*cell, h * dt, 0.0, cfg) : greens::split_B(z);
        out[j * K + m] = a_val * logw(l, m) + weight * (a_val * log_scale + smooth);
      }
    }
  });
  return mat;
}

namespace {

ComplexMatrix rhs_for(const FoundationGrid& grid, std::span<const double> alpha) {
  if (alpha.size() != grid.buildings()) throw ValidationError("alpha length must equal building count");
  const std::size_t K = grid.nodes_per_building();
  ComplexMatrix rhs(grid.unknowns(), 1);
  for (std::size_t j = 0; j < grid.buildings(); ++j)
    for (std::size_t m = 0; m < K; ++m) rhs(j * K + m, 0) = alpha[j];
  return rhs;
}

DensitySolution package(const ComplexMatrix& k, const FoundationGrid& grid, double xi, const KernelMode& mode,
                        std::span<const double> alpha, const ComplexMatrix& solution) {
  const std::size_t K = grid.nodes_per_building();
  DensitySolution sol{xi, grid, mode, std::vector<double>(alpha.begin(), alpha.end()), {}, 0.0};
  sol.phi.assign(grid.buildings(), std::vector<Complex>(K));
  for (std::size_t j = 0; j < grid.buildings(); ++j)
    for (std::size_t m = 0; m < K; ++m) sol.phi[j][m] = solution(j * K + m, 0);

  double resid = 0.0;
  for (std::size_t r = 0; r < k.rows(); ++r) {
    Complex acc = -alpha[r / K];
    const auto row = k.row(r);
    for (std::size_t c = 0; c < k.cols(); ++c) acc += row[c] * solution(c, 0);
    resid = std::max(resid, std::abs(acc));
  }
  sol.residual = resid;
  double amax = 0.0;
  for (double a : alpha) amax = std::max(amax, std::fabs(a));
  if (resid > 1e-10 * std::max(amax, 1e-300) && amax > 0.0) {
    std::ostringstream os;
    os << "density residual " << resid << " exceeds 1e-10 * ||alpha||";
    throw SingularSystemError(os.str());
  }
  return sol;
}

}  // namespace

DensitySolution solve_density(const ComplexMatrix& k, const FoundationGrid& grid, double xi,
                              const KernelMode& mode, std::span<const double> alpha) {
  if (k.rows() != grid.unknowns()) throw ValidationError("solve_density: matrix does not match grid");
  LuFactorization lu(k);
  ComplexMatrix x = rhs_for(grid, alpha);
  lu.solve_in_place(x);
  return package(k, grid, xi, mode, alpha, x);
}

CollocationSystem::CollocationSystem(FoundationGrid grid, double xi, KernelMode mode)
    : grid_(std::move(grid)), xi_(xi), mode_(mode), matrix_(assemble(grid_, xi, mode_)), lu_(matrix_) {}

DensitySolution CollocationSystem::solve(std::span<const double> alpha) const {
  ComplexMatrix x = rhs_for(grid_, alpha);
  lu_.solve_in_place(x);
  return package(matrix_, grid_, xi_, mode_, alpha, x);
}

RealMatrix CollocationSystem::force_matrix() const {
  const std::size_t N = grid_.buildings();
  const std::size_t K = grid_.nodes_per_building();
  ComplexMatrix rhs(grid_.unknowns(), N);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t m = 0; m < K; ++m) rhs(j * K + m, j) = 1.0;
  lu_.solve_in_place(rhs);
  const double w = -0.5 * kPi / static_cast<double>(K);
  RealMatrix force(N, N);
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t l = 0; l < N; ++l) {
      double s = 0.0;
      for (std::size_t m = 0; m < K; ++m) s += rhs(k * K + m, l).real();
      force(k, l) = w * s;
    }
  }
  return force;
}

double foundation_force(const DensitySolution& sol, std::size_t j) {
  const auto& phi = sol.phi.at(j);
  double s = 0.0;
  for (const auto& v : phi) s += v.real();
  return -0.5 * kPi / static_cast<double>(phi.size()) * s;
}

Complex evaluate_field(const DensitySolution& sol, double x, double y) {
  if (!(y > 0.0)) throw DomainError("evaluate_field: y must be positive");
  const auto& grid = sol.grid;
  std::optional<greens::PeriodicCell> cell;
  greens::EwaldConfig cfg;
  if (sol.mode.is_periodic()) {
    cell.emplace(*sol.mode.half_period, sol.xi);
    cfg = greens::ewald_for(*cell);
  }
  Complex total = 0.0;
  for (std::size_t j = 0; j < grid.buildings(); ++j) {
    const auto& phi = sol.phi[j];
    const std::size_t K = phi.size();
    const double h = grid.half_length(j);
    // Nearby targets see a peaked kernel; resample the Chebyshev interpolant of
    // phi onto a finer Gauss-Chebyshev rule. The rule converges like
    // rho^(-2n) with rho = exp(asinh(gap / h)); size it for about 1e-16.
    double offset = x - grid.center(j);
    if (cell) offset = std::remainder(offset, 2.0 * cell->half_period());
    const double gap = std::max(y, std::max(0.0, std::fabs(offset) - h));
    std::size_t nodes = K;
    const double needed = 18.5 / std::asinh(gap / h);
    if (needed > static_cast<double>(K)) nodes = std::min<std::size_t>(4096, static_cast<std::size_t>(std::ceil(needed)));

    std::vector<double> re(K), im(K);
    for (std::size_t m = 0; m < K; ++m) {
      re[m] = phi[m].real();
      im[m] = phi[m].imag();
    }
    const auto cre = chebyshev_coefficients(re);
    const auto cim = chebyshev_coefficients(im);
    std::vector<Complex> coeff(K);
    for (std::size_t n = 0; n < K; ++n) coeff[n] = {cre[n], cim[n]};

    Complex acc = 0.0;
    for (std::size_t m = 0; m < nodes; ++m) {
      const double t = std::cos((2.0 * static_cast<double>(m) + 1.0) * kPi / (2.0 * static_cast<double>(nodes)));
      const Complex phi_t = nodes == K ? phi[m] : clenshaw<Complex>(coeff, t);
      const double dx = x - (h * t + grid.center(j));
      const Complex g = cell ? greens::gper_ewald(*cell, dx, y, cfg) : greens::kernel_free(sol.xi, dx, y);
      acc += g * phi_t;
    }
    total += acc * (kPi / static_cast<double>(nodes));
  }
  return total;
}

}  // namespace cityres::bie
