#include <gtest/gtest.h>

#include <cmath>

#include "cityres/error.hpp"
#include "cityres/greens.hpp"
#include "oracles.hpp"

using namespace cityres;
using namespace cityres::greens;
using specfun::kEulerGamma;
using specfun::kPi;

namespace {

EwaldConfig with_a(double a) {
  EwaldConfig cfg;
  cfg.a = a;
  return cfg;
}

}  // namespace

TEST(KernelFree, MatchesOracleAndSymmetries) {
  const auto ref = oracle::kernel_free(1.0, 1.0, 0.0);
  EXPECT_LE(std::abs(kernel_free(1.0, 1.0, 0.0) - ref), 1e-12);
  for (double dx : {0.3, -1.7, 4.0}) {
    for (double y : {0.0, 0.2, 2.5}) {
      EXPECT_EQ(kernel_free(1.3, dx, y), kernel_free(1.3, -dx, y));
      EXPECT_LE(std::abs(kernel_free(1.3, dx, y) - kernel_free(1.3, y, dx)), 1e-15);
      EXPECT_LE(std::abs(kernel_free(2.0, dx, y) - kernel_free(1.0, 2.0 * dx, 2.0 * y)), 1e-15);
    }
  }
  EXPECT_THROW(kernel_free(1.0, 0.0, 0.0), SingularPointError);
}

TEST(Split, KnownValues) {
  EXPECT_NEAR(split_A(0.0), -1.0 / (2.0 * kPi), 1e-15);
  EXPECT_NEAR(split_A(2.404825557695773), 0.0, 1e-10);
  const auto b0 = split_B(0.0);
  EXPECT_NEAR(b0.real(), -2.0 * kEulerGamma / (4.0 * kPi), 1e-15);
  EXPECT_NEAR(b0.imag(), 0.25, 1e-15);
  EXPECT_NEAR(b0.real(), -0.0918667263, 1e-10);
  for (double z : {0.0, 0.7, 3.0, 11.0, 19.5}) {
    EXPECT_NEAR(split_B(z).imag(), specfun::bessel_j0(z) / 4.0, 1e-14);
  }
}

TEST(Split, IdentityWithHankelOnZeroToTwenty) {
  double worst = 0.0;
  for (int i = 1; i <= 4000; ++i) {
    const double z = 0.005 * i;
    const Complex lhs = split_A(z) * std::log(0.5 * z) + split_B(z);
    worst = std::max(worst, std::abs(lhs - specfun::hankel0_quarter_i(z)));
  }
  for (double z : {1e-6, 1e-4, 1e-2}) {
    const Complex lhs = split_A(z) * std::log(0.5 * z) + split_B(z);
    worst = std::max(worst, std::abs(lhs - specfun::hankel0_quarter_i(z)));
  }
  EXPECT_LE(worst, 1e-11);
}

TEST(GammaM, BranchesAndWoodAnomaly) {
  const PeriodicCell cell(kPi, 1.5);
  EXPECT_LE(std::abs(gamma_m(cell, 0) - Complex(0.0, 1.5)), 1e-15);
  EXPECT_LE(std::abs(gamma_m(cell, 2) - Complex(std::sqrt(1.75), 0.0)), 1e-15);
  EXPECT_THROW(PeriodicCell(kPi, 1.0), WoodAnomalyError);
  EXPECT_TRUE(near_wood_anomaly(kPi, 1.0));
  EXPECT_FALSE(near_wood_anomaly(kPi, 1.1));
  EXPECT_THROW(PeriodicCell(-1.0, 1.0), ValidationError);
}

TEST(GperEwald, PeriodicAndEven) {
  const PeriodicCell cell(2.5, 1.0);
  const auto cfg = ewald_for(cell);
  for (double dx : {0.3, 1.7, -2.2}) {
    for (double y : {0.0, 0.4, 3.0}) {
      const auto g = gper_ewald(cell, dx, y, cfg);
      EXPECT_LE(std::abs(gper_ewald(cell, dx + 5.0, y, cfg) - g), 1e-12);
      EXPECT_LE(std::abs(gper_ewald(cell, -dx, y, cfg) - g), 1e-12);
    }
  }
  EXPECT_THROW(gper_ewald(cell, 5.0, 0.0, cfg), SingularPointError);
}

TEST(GperEwald, SplittingParameterInvariance) {
  double worst = 0.0;
  for (double xi : {0.5, 1.0, 2.2}) {
    const PeriodicCell cell(2.5, xi);
    for (double dx : {0.1, 0.7, 2.4}) {
      for (double y : {0.0, 0.3, 1.5}) {
        const auto g2 = gper_ewald(cell, dx, y, with_a(2.0));
        worst = std::max(worst, std::abs(gper_ewald(cell, dx, y, with_a(3.0)) - g2));
        worst = std::max(worst, std::abs(gper_ewald(cell, dx, y, with_a(4.0)) - g2));
      }
    }
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(GperEwald, MatchesWindowedDirectSum) {
  const PeriodicCell cell(2.5, 1.0);
  const auto g = gper_ewald(cell, 0.7, 0.3, ewald_for(cell));
  EXPECT_LE(std::abs(g - oracle::gper_direct(2.5, 1.0, 0.7, 0.3, 2000)), 1e-6);
}

TEST(GperEwald, MatchesRayleighExpansionAwayFromTheLine) {
  for (double xi : {0.8, 1.9}) {
    const PeriodicCell cell(1.5, xi);
    for (double y : {0.5, 2.0}) {
      for (double dx : {0.0, 0.9}) {
        const auto g = gper_ewald(cell, dx, y, ewald_for(cell));
        EXPECT_LE(std::abs(g - oracle::gper_spectral(1.5, xi, dx, y)), 1e-11) << xi << " " << y << " " << dx;
      }
    }
  }
}

TEST(GperEwald, HelmholtzResidual) {
  const PeriodicCell cell(2.5, 1.2);
  const auto cfg = ewald_for(cell);
  const double h = 1e-3;
  for (double x : {0.3, 1.1, -2.0}) {
    for (double y : {0.5, 1.0, 2.0}) {
      const auto c = gper_ewald(cell, x, y, cfg);
      const auto lap = (gper_ewald(cell, x + h, y, cfg) + gper_ewald(cell, x - h, y, cfg) +
                        gper_ewald(cell, x, y + h, cfg) + gper_ewald(cell, x, y - h, cfg) - 4.0 * c) /
                       (h * h);
      EXPECT_LE(std::abs(lap + 1.44 * c), 1e-5);
    }
  }
}

TEST(GperEwald, RadiatesUpward) {
  // P = 2 and xi = 1.2 < pi / 2: only m = 0 propagates.
  const PeriodicCell cell(2.0, 1.2);
  const auto cfg = ewald_for(cell);
  const double y = 40.0 / 1.2;
  const double h = 1e-4;
  const auto g = gper_ewald(cell, 0.4, y, cfg);
  const auto dg = (gper_ewald(cell, 0.4, y + h, cfg) - gper_ewald(cell, 0.4, y - h, cfg)) / (2.0 * h);
  EXPECT_LE(std::abs(dg - Complex(0.0, 1.2) * g), 1e-6);
}

TEST(GperEwald, RefusesCatastrophicRatio) {
  const PeriodicCell cell(7.5, 2.0);
  EXPECT_THROW(gper_ewald(cell, 0.3, 0.0, with_a(2.0)), NumericalError);
  EXPECT_NO_THROW(gper_ewald(cell, 0.3, 0.0, ewald_for(cell)));
}

TEST(LatticeSumOrigin, SplittingParameterInvariance) {
  for (double xi : {0.6, 1.0, 2.1}) {
    const PeriodicCell cell(2.5, xi);
    const auto s2 = lattice_sum_origin(cell, with_a(2.0));
    EXPECT_LE(std::abs(lattice_sum_origin(cell, with_a(3.0)) - s2), 1e-10);
    EXPECT_LE(std::abs(lattice_sum_origin(cell, with_a(4.0)) - s2), 1e-10);
  }
}

TEST(LatticeSumOrigin, MatchesWindowedDirectSum) {
  const PeriodicCell cell(2.5, 1.0);
  const auto s = lattice_sum_origin(cell, ewald_for(cell));
  EXPECT_LE(std::abs(s - oracle::gper_direct(2.5, 1.0, 0.0, 0.0, 2000, true)), 1e-6);
}

TEST(Btilde, OriginValueAndContinuity) {
  const PeriodicCell cell(2.5, 1.0);
  const auto cfg = ewald_for(cell);
  const auto b0 = btilde(cell, 0.0, 0.0, cfg);
  EXPECT_LE(std::abs(b0 - (split_B(0.0) + lattice_sum_origin(cell, cfg))), 1e-15);
  EXPECT_LE(std::abs(btilde(cell, 1e-3, 0.0, cfg) - b0), 1e-4);
  // Richardson extrapolation of btilde(h, 0) to h = 0.
  const auto bh = btilde(cell, 2e-2, 0.0, cfg);
  const auto bh2 = btilde(cell, 1e-2, 0.0, cfg);
  EXPECT_LE(std::abs((4.0 * bh2 - bh) / 3.0 - b0), 1e-6);
}

TEST(Btilde, SmoothAlongTheLine) {
  const PeriodicCell cell(2.5, 1.0);
  const auto cfg = ewald_for(cell);
  const double h = 1e-2;
  for (double x : {-0.05, 0.0, 0.05}) {
    const double d2 = (btilde(cell, x + h, 0.0, cfg).real() - 2.0 * btilde(cell, x, 0.0, cfg).real() +
                       btilde(cell, x - h, 0.0, cfg).real()) /
                      (h * h);
    EXPECT_LE(std::fabs(d2), 10.0);
  }
}

TEST(Btilde, ReachesOnePeriodEitherSide) {
  const PeriodicCell cell(1.25, 1.0);
  const auto cfg = ewald_for(cell);
  EXPECT_NO_THROW(btilde(cell, 2.0, 0.0, cfg));
  EXPECT_THROW(btilde(cell, 2.6, 0.0, cfg), DomainError);
}

TEST(EwaldConfig, Validation) {
  EwaldConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.a = 0.0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = EwaldConfig{};
  cfg.term_tol = 1e-3;
  EXPECT_THROW(cfg.validate(), ValidationError);
}
