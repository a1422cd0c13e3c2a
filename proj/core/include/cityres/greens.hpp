#pragma once

// Free-space and quasi-periodic Green's functions of the 2-D Helmholtz operator.
//
// The free kernel is G(x, y) = (i/4) H0^(1)(xi r). Near r = 0 it splits as
//   G = A(xi r) ln(xi r / 2) + B(xi r),
// with A, B entire. The periodic kernel G_per(x, y) = sum_n G(x - 2nP, y) is
// evaluated by Ewald summation and splits the same way with a smooth
// remainder Btilde(x, y) that is finite at the origin.

#include <complex>

#include "cityres/specfun.hpp"

namespace cityres::greens {

using Complex = std::complex<double>;

/// Truncation controls for the two Ewald sums.
struct EwaldConfig {
  double a = 2.0;            ///< splitting parameter
  double term_tol = 1e-16;   ///< relative summand cutoff
  int max_spectral = 200;    ///< cap on |m| in the spectral sum
  int max_spatial = 50;      ///< cap on |m| in the spatial sum
  int max_inner = 60;        ///< cap on n in the inner exponential-integral series

  /// Throws ValidationError if a field is out of range.
  void validate() const;
};

/// Largest xi P / a the Ewald evaluation accepts; beyond it the two sums cancel
/// catastrophically (their magnitudes grow like exp((xi P / a)^2)).
inline constexpr double kMaxEwaldRatio = 6.0;

/// Rayleigh modes with |gamma_m| below this are treated as Wood anomalies.
inline constexpr double kWoodThreshold = 1e-8;

/// Period 2P along x and the wavenumber xi.
class PeriodicCell {
 public:
  /// Throws ValidationError for non-positive inputs and WoodAnomalyError if
  /// some gamma_m vanishes.
  PeriodicCell(double half_period, double xi);

  double half_period() const noexcept { return half_period_; }
  double period() const noexcept { return 2.0 * half_period_; }
  double xi() const noexcept { return xi_; }
  /// Reciprocal lattice step p = pi / P.
  double p() const noexcept { return specfun::kPi / half_period_; }

 private:
  double half_period_;
  double xi_;
};

/// True if some |gamma_m| < kWoodThreshold for this (P, xi).
bool near_wood_anomaly(double half_period, double xi);

/// Splitting parameter used by the solvers: 2 unless xi P is large, in which
/// case it grows to keep xi P / a <= 2.
EwaldConfig ewald_for(const PeriodicCell& cell);

/// (i/4) H0^(1)(xi sqrt(dx^2 + y^2)); throws SingularPointError at r = 0.
Complex kernel_free(double xi, double dx, double y);

/// A(z) = -J0(z) / (2 pi), the coefficient of ln(z/2).
double split_A(double z);

/// B(z) = (i/4 - C/(2 pi)) J0(z) + (1/(2 pi)) sum_{m>=1} H_m (-1)^m (z/2)^{2m} / (m!)^2.
Complex split_B(double z);

/// gamma_m = sqrt(m^2 p^2 - xi^2), or i sqrt(xi^2 - m^2 p^2) for propagating modes.
/// The Ewald sums use the conjugate of the propagating branch, which makes
/// G_per the outgoing lattice sum of (i/4) H0^(1).
Complex gamma_m(const PeriodicCell& cell, int m);

/// G_per(dx, y) = sum_n G(dx - 2nP, y) by Ewald summation.
Complex gper_ewald(const PeriodicCell& cell, double dx, double y, const EwaldConfig& cfg);

/// Smooth part of G_per: G_per - A(xi r) ln(xi r / 2), continued to r = 0.
/// Accepts |dx| < 2P (one period either side of the origin).
Complex btilde(const PeriodicCell& cell, double dx, double y, const EwaldConfig& cfg);

/// sum_{n != 0} G(-2nP, 0), the lattice sum seen from a lattice point.
Complex lattice_sum_origin(const PeriodicCell& cell, const EwaldConfig& cfg);

}  // namespace cityres::greens
