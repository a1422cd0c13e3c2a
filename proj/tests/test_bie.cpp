#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "cityres/bie.hpp"
#include "cityres/error.hpp"
#include "cityres/greens.hpp"

using namespace cityres;
using namespace cityres::bie;
using specfun::kPi;

namespace {

DensitySolution solve_one(const std::vector<Foundation>& f, int M, double xi, const KernelMode& mode,
                          const std::vector<double>& alpha) {
  FoundationGrid grid(f, M);
  const auto k = assemble(grid, xi, mode);
  return solve_density(k, grid, xi, mode, alpha);
}

double chebyshev_t(int n, double x) { return std::cos(n * std::acos(x)); }

}  // namespace

TEST(Chebyshev, NodesAreFirstKind) {
  const auto t = chebyshev_nodes(3);
  ASSERT_EQ(t.size(), 6u);
  for (int m = 1; m <= 6; ++m) EXPECT_NEAR(t[m - 1], std::cos((2.0 * m - 1.0) * kPi / 12.0), 1e-15);
}

TEST(Chebyshev, GaussRuleExactToDegree4MMinus1) {
  for (int M : {1, 3, 5, 10}) {
    const auto t = chebyshev_nodes(M);
    const double w = kPi / (2.0 * M);
    double exact = kPi;  // k = 0
    for (int k = 0; k <= 4 * M - 1; ++k) {
      if (k > 0 && k % 2 == 0) exact *= (k - 1.0) / k;
      double sum = 0.0;
      for (double tm : t) sum += w * std::pow(tm, k);
      EXPECT_NEAR(sum, k % 2 ? 0.0 : exact, 1e-14) << "M=" << M << " k=" << k;
    }
  }
}

TEST(Chebyshev, LogMomentsMatchAdaptiveQuadrature) {
  const int M = 8;
  const auto t = chebyshev_nodes(M);
  const auto W = log_product_weights(M);
  boost::math::quadrature::tanh_sinh<double> ts;
  for (int n = 0; n <= 10; ++n) {
    for (std::size_t l : {0u, 3u, 7u, 12u}) {
      const double x = t[l];
      double prod = 0.0;
      for (std::size_t m = 0; m < t.size(); ++m) prod += W(l, m) * chebyshev_t(n, t[m]);
      // t = cos(theta), then theta = theta0 -+ d so the log singularity sits at d = 0.
      const double th0 = std::acos(x);
      auto side = [&](double sgn) {
        return [=](double d) {
          const double th = th0 + sgn * d;
          const double gap = 2.0 * std::fabs(std::sin(th0 + 0.5 * sgn * d)) * std::sin(0.5 * d);
          return std::log(gap) * std::cos(n * th);
        };
      };
      const double ref = ts.integrate(side(-1.0), 0.0, th0) + ts.integrate(side(1.0), 0.0, kPi - th0);
      EXPECT_NEAR(prod, ref, 1e-10) << "n=" << n << " l=" << l;
      const double closed = n == 0 ? -kPi * std::log(2.0) : -kPi * chebyshev_t(n, x) / n;
      EXPECT_NEAR(ref, closed, 1e-10);
    }
  }
}

TEST(FoundationGrid, Validation) {
  EXPECT_THROW(FoundationGrid({}, 5), ValidationError);
  EXPECT_THROW(FoundationGrid({{1.0, 1.0}}, 5), ValidationError);
  EXPECT_THROW(FoundationGrid({{0.0, 1.0}}, 0), ValidationError);
  EXPECT_THROW(FoundationGrid({{0.0, 1.0}, {0.9, 2.0}}, 5), ValidationError);
  EXPECT_THROW(FoundationGrid({{0.0, 1.0}, {1.0 + 1e-7, 2.0}}, 5), ValidationError);
  EXPECT_NO_THROW(FoundationGrid({{2.0, 3.0}, {0.0, 1.0}}, 5));
  FoundationGrid g({{1.0, 3.0}}, 2);
  EXPECT_EQ(g.unknowns(), 4u);
  EXPECT_DOUBLE_EQ(g.center(0), 2.0);
  EXPECT_DOUBLE_EQ(g.half_length(0), 1.0);
  EXPECT_DOUBLE_EQ(g.point(0, 0), 2.0 + g.nodes()[0]);
}

TEST(Assemble, OffDiagonalBlocksUsePlainGaussChebyshev) {
  FoundationGrid grid({{0.0, 1.0}, {2.0, 2.5}}, 2);
  const auto k = assemble(grid, 1.3, KernelMode::free());
  const double w = kPi / 4.0;
  for (std::size_t l = 0; l < 4; ++l)
    for (std::size_t m = 0; m < 4; ++m) {
      const auto ref = w * greens::kernel_free(1.3, grid.point(0, l) - grid.point(1, m), 0.0);
      EXPECT_LE(std::abs(k(l, 4 + m) - ref), 1e-15);
    }
}

TEST(SolveDensity, ZeroDataGivesZeroDensity) {
  const auto sol = solve_one({{-1.0, 1.0}}, 5, 1.0, KernelMode::free(), {0.0});
  for (const auto& v : sol.phi[0]) EXPECT_EQ(std::abs(v), 0.0);
}

TEST(SolveDensity, LinearInAlpha) {
  const std::vector<Foundation> f{{0.0, 1.0}, {1.5, 2.7}};
  const auto s1 = solve_one(f, 6, 1.1, KernelMode::free(), {1.0, -0.4});
  const auto s2 = solve_one(f, 6, 1.1, KernelMode::free(), {2.0, -0.8});
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t m = 0; m < s1.phi[j].size(); ++m) EXPECT_LE(std::abs(s2.phi[j][m] - 2.0 * s1.phi[j][m]), 1e-13);
  EXPECT_LE(s1.residual, 1e-10);
}

TEST(SolveDensity, SymmetricGeometryGivesSymmetricDensity) {
  const auto sol = solve_one({{-1.0, 1.0}}, 7, 1.4, KernelMode::free(), {1.0});
  const auto& phi = sol.phi[0];
  for (std::size_t m = 0; m < phi.size(); ++m) EXPECT_LE(std::abs(phi[m] - phi[phi.size() - 1 - m]), 1e-10);
}

TEST(SolveDensity, RejectsWrongAlphaLength) {
  FoundationGrid grid({{0.0, 1.0}}, 3);
  const auto k = assemble(grid, 1.0, KernelMode::free());
  EXPECT_THROW(solve_density(k, grid, 1.0, KernelMode::free(), std::vector<double>{1.0, 2.0}), ValidationError);
}

TEST(FoundationForce, ConstantDensity) {
  auto sol = solve_one({{-1.0, 1.0}}, 4, 1.0, KernelMode::free(), {1.0});
  for (auto& v : sol.phi[0]) v = Complex(0.0, 0.0);
  EXPECT_EQ(foundation_force(sol, 0), 0.0);
  for (auto& v : sol.phi[0]) v = Complex(0.7, 3.0);
  EXPECT_NEAR(foundation_force(sol, 0), -0.5 * kPi * 0.7, 1e-14);
}

TEST(FoundationForce, ForceMatrixMatchesColumnSolves) {
  const std::vector<Foundation> f{{0.0, 1.0}, {1.5, 2.7}, {3.0, 3.4}};
  CollocationSystem sys(FoundationGrid(f, 5), 0.9, KernelMode::free());
  const auto t = sys.force_matrix();
  for (std::size_t l = 0; l < 3; ++l) {
    std::vector<double> e(3, 0.0);
    e[l] = 1.0;
    const auto sol = sys.solve(e);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(t(k, l), foundation_force(sol, k), 1e-14);
  }
}

TEST(FoundationForce, StableInMForSingleBuilding) {
  const std::vector<Foundation> f{{-0.2, 0.2}};
  auto force = [&](int M) {
    const auto sol = solve_one(f, M, 0.842667, KernelMode::free(), {1.0});
    return foundation_force(sol, 0);
  };
  const double f5 = force(5), f50 = force(50), f100 = force(100);
  EXPECT_LT(std::fabs(f5 - f100), 0.03 * std::fabs(f100));
  EXPECT_LT(std::fabs(f50 - f100), 1e-3 * std::fabs(f100));
}

TEST(EvaluateField, BoundaryValueNearTheFoundation) {
  const auto sol = solve_one({{-0.2, 0.2}}, 20, 1.0, KernelMode::free(), {1.0});
  EXPECT_LE(std::abs(evaluate_field(sol, 0.0, 0.01) - 1.0), 2e-3);
}

TEST(EvaluateField, ApproachesTheBoundaryValue) {
  for (int M : {20, 40}) {
    const auto sol = solve_one({{-0.2, 0.2}}, M, 1.0, KernelMode::free(), {1.0});
    EXPECT_LE(std::abs(evaluate_field(sol, 0.0, 1e-4) - 1.0), 2e-4);
    EXPECT_LE(std::abs(evaluate_field(sol, 0.1, 1e-4) - 1.0), 2e-4);
    const auto y1 = evaluate_field(sol, 0.0, 2e-3), y2 = evaluate_field(sol, 0.0, 1e-3);
    EXPECT_LE(std::abs(2.0 * y2 - y1 - 1.0), 1e-5);
  }
}

TEST(EvaluateField, FarFieldDecay) {
  const auto sol = solve_one({{-1.0, 1.0}}, 5, 1.0, KernelMode::free(), {1.0});
  const double ratio = std::abs(evaluate_field(sol, 0.0, 100.0)) / std::abs(evaluate_field(sol, 0.0, 400.0));
  EXPECT_NEAR(ratio, 2.0, 0.2);
}

TEST(EvaluateField, HelmholtzResidual) {
  const double xi = 1.2;
  const auto sol = solve_one({{-1.0, 1.0}, {1.5, 2.5}}, 6, xi, KernelMode::free(), {1.0, -0.5});
  const double h = 1e-3;
  const double x = 0.3, y = 1.0;
  const auto c = evaluate_field(sol, x, y);
  const auto lap = (evaluate_field(sol, x + h, y) + evaluate_field(sol, x - h, y) + evaluate_field(sol, x, y + h) +
                    evaluate_field(sol, x, y - h) - 4.0 * c) /
                   (h * h);
  EXPECT_LE(std::abs(lap + xi * xi * c), 1e-5 * std::abs(c));
}

TEST(EvaluateField, PeriodicInX) {
  const auto mode = KernelMode::periodic(2.5);
  const auto sol = solve_one({{0.0, 2.0}}, 5, 1.0, mode, {1.0});
  for (double x : {0.3, 1.7, -1.1}) EXPECT_LE(std::abs(evaluate_field(sol, x + 5.0, 0.8) - evaluate_field(sol, x, 0.8)), 1e-10);
}

TEST(Assemble, PeriodicRejectsOversizedCell) {
  FoundationGrid grid({{0.0, 2.0}, {2.5, 4.9}}, 3);
  EXPECT_THROW(assemble(grid, 1.0, KernelMode::periodic(2.0)), ValidationError);
}

TEST(SolveDensity, TwoByTwoMatchesCramer) {
  FoundationGrid grid({{-0.5, 0.5}}, 1);
  const auto k = assemble(grid, 1.0, KernelMode::free());
  const auto sol = solve_density(k, grid, 1.0, KernelMode::free(), std::vector<double>{1.0});
  const Complex det = k(0, 0) * k(1, 1) - k(0, 1) * k(1, 0);
  const Complex x0 = (k(1, 1) - k(0, 1)) / det;
  const Complex x1 = (k(0, 0) - k(1, 0)) / det;
  EXPECT_LE(std::abs(sol.phi[0][0] - x0), 1e-14 * std::abs(x0));
  EXPECT_LE(std::abs(sol.phi[0][1] - x1), 1e-14 * std::abs(x1));
}
