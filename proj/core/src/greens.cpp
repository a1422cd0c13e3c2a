#include "cityres/greens.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "cityres/error.hpp"

namespace cityres::greens {

using specfun::kEulerGamma;
using specfun::kPi;

namespace {

constexpr double kBSeriesCrossover = 16.0;

// (1/(2 pi)) sum_{m>=1} H_m (-1)^m (z/2)^{2m} / (m!)^2 together with J0(z),
// both in long double so the alternating series keeps ~1e-15 absolute accuracy.
void b_series(double z, long double& j0, long double& harmonic_sum) {
  const long double q = 0.25L * static_cast<long double>(z) * z;
  long double term = 1.0L;
  long double harmonic = 0.0L;
  j0 = 1.0L;
  harmonic_sum = 0.0L;
  for (int m = 1; m < 200; ++m) {
    term *= -q / (static_cast<long double>(m) * m);
    harmonic += 1.0L / m;
    j0 += term;
    harmonic_sum += harmonic * term;
    if (std::fabs(term) * (1.0L + harmonic) < 1e-22L && q < m * m) break;
  }
}

// exp(shift) * erfc(z) where exponent = shift - z^2 is known in closed form;
// avoids overflow of exp(shift) against underflow of erfc(z).
Complex scaled_erfc(Complex z, Complex shift, Complex exponent) {
  if (z.real() >= 0.0) return std::exp(exponent) * specfun::erfcx_complex(z);
  return 2.0 * std::exp(shift) - std::exp(exponent) * specfun::erfcx_complex(-z);
}

void check_ratio(const PeriodicCell& cell, const EwaldConfig& cfg) {
  const double ratio = cell.xi() * cell.half_period() / cfg.a;
  if (ratio > kMaxEwaldRatio) {
    std::ostringstream os;
    os << "Ewald: xi*P/a = " << ratio << " exceeds " << kMaxEwaldRatio
       << " (catastrophic cancellation risk); increase the splitting parameter";
    throw NumericalError(os.str());
  }
}

// (1/n!) (xi P / a)^{2n} E_{n+1}(u), summed over n until the tail is negligible.
double inner_series(double u, double ratio_sq, const EwaldConfig& cfg) {
  std::vector<double> en(static_cast<std::size_t>(cfg.max_inner) + 1);
  specfun::expint_sequence(u, en);
  double coeff = 1.0;
  double sum = 0.0;
  for (int n = 0; n <= cfg.max_inner; ++n) {
    if (n > 0) coeff *= ratio_sq / n;
    const double term = coeff * en[static_cast<std::size_t>(n)];
    sum += term;
    if (n > ratio_sq && term <= cfg.term_tol * sum) return sum;
  }
  std::ostringstream os;
  os << "Ewald spatial series: " << cfg.max_inner << " terms did not reach tolerance "
     << cfg.term_tol << " (u = " << u << ", (xi P/a)^2 = " << ratio_sq << ")";
  throw TruncationError(os.str());
}

// gamma_m on the branch the Ewald sums need for (i/4) H0^(1): propagating
// modes take -i sqrt(xi^2 - m^2 p^2) so that they radiate as exp(+i beta y).
Complex ewald_gamma(const PeriodicCell& cell, int m) { return std::conj(gamma_m(cell, m)); }

Complex spectral_sum(const PeriodicCell& cell, double dx, double y, const EwaldConfig& cfg) {
  const double P = cell.half_period();
  const double a = cfg.a;
  const double p = cell.p();
  const double shift_y = a * y / (2.0 * P);
  auto term = [&](int m) {
    const Complex g = ewald_gamma(cell, m);
    const Complex gp = g * (P / a);
    const Complex exponent = -gp * gp - shift_y * shift_y;
    const Complex bracket = scaled_erfc(gp + shift_y, g * y, exponent) +
                            scaled_erfc(gp - shift_y, -g * y, exponent);
    const Complex phase = std::polar(1.0, p * m * dx);
    return phase * bracket / (8.0 * P * g);
  };
  Complex sum = term(0);
  for (int k = 1; k <= cfg.max_spectral; ++k) {
    const Complex pair = term(k) + term(-k);
    sum += pair;
    const bool evanescent = k * p > cell.xi();
    const bool past_hump = std::abs(gamma_m(cell, k)) * P / a > shift_y;
    if (evanescent && past_hump && std::abs(pair) <= cfg.term_tol * std::max(std::abs(sum), 1e-300)) {
      return sum;
    }
  }
  std::ostringstream os;
  os << "Ewald spectral sum: " << cfg.max_spectral << " modes did not reach tolerance "
     << cfg.term_tol;
  throw TruncationError(os.str());
}

double spatial_sum(const PeriodicCell& cell, double dx, double y, const EwaldConfig& cfg,
                   bool skip_origin) {
  const double P = cell.half_period();
  const double a = cfg.a;
  const double ratio = cell.xi() * P / a;
  const double ratio_sq = ratio * ratio;
  const double scale = a * a / (4.0 * P * P);
  auto image = [&](int m) {
    const double d = dx - 2.0 * m * P;
    return inner_series(scale * (d * d + y * y), ratio_sq, cfg);
  };
  double sum = skip_origin ? 0.0 : image(0);
  for (int k = 1; k <= cfg.max_spatial; ++k) {
    const double pair = image(k) + image(-k);
    sum += pair;
    if (2.0 * (k - 1) * P > std::fabs(dx) && pair <= cfg.term_tol * std::max(std::fabs(sum), 1e-300)) {
      return sum / (4.0 * kPi);
    }
  }
  std::ostringstream os;
  os << "Ewald spatial sum: " << cfg.max_spatial << " images did not reach tolerance "
     << cfg.term_tol;
  throw TruncationError(os.str());
}

// dx shifted by a multiple of 2P into [-P, P].
double reduce(double dx, double P) { return dx - 2.0 * P * std::nearbyint(dx / (2.0 * P)); }

}  // namespace

void EwaldConfig::validate() const {
  if (!(a > 0.0)) throw ValidationError("EwaldConfig: splitting parameter must be positive");
  if (!(term_tol > 0.0 && term_tol <= 1e-8)) {
    throw ValidationError("EwaldConfig: term_tol must lie in (0, 1e-8]");
  }
  if (max_spectral < 1 || max_spatial < 1 || max_inner < 1) {
    throw ValidationError("EwaldConfig: term caps must be positive");
  }
}

bool near_wood_anomaly(double half_period, double xi) {
  const double p = kPi / half_period;
  const double m0 = std::floor(xi / p);
  for (double m : {m0, m0 + 1.0}) {
    const double g2 = m * m * p * p - xi * xi;
    if (std::sqrt(std::fabs(g2)) < kWoodThreshold) return true;
  }
  return false;
}

PeriodicCell::PeriodicCell(double half_period, double xi) : half_period_(half_period), xi_(xi) {
  if (!(half_period > 0.0)) throw ValidationError("PeriodicCell: half period must be positive");
  if (!(xi > 0.0)) throw ValidationError("PeriodicCell: wavenumber must be positive");
  if (near_wood_anomaly(half_period, xi)) {
    const int m = static_cast<int>(std::lround(xi / p()));
    std::ostringstream os;
    os << "Wood anomaly: gamma_" << m << " vanishes at xi = " << xi << ", P = " << half_period;
    throw WoodAnomalyError(os.str(), m);
  }
}

EwaldConfig ewald_for(const PeriodicCell& cell) {
  EwaldConfig cfg;
  cfg.a = std::max(2.0, 0.5 * cell.xi() * cell.half_period());
  return cfg;
}

Complex kernel_free(double xi, double dx, double y) {
  const double r = std::hypot(dx, y);
  if (r == 0.0) throw SingularPointError("kernel_free: coincident source and target");
  return specfun::hankel0_quarter_i(xi * r);
}

double split_A(double z) { return -specfun::bessel_j0(z) / (2.0 * kPi); }

Complex split_B(double z) {
  if (!(z >= 0.0)) throw DomainError("split_B: argument must be non-negative");
  if (z <= kBSeriesCrossover) {
    long double j0, hsum;
    b_series(z, j0, hsum);
    const double re = static_cast<double>(-kEulerGamma / (2.0 * kPi) * j0 + hsum / (2.0 * kPi));
    return {re, 0.25 * static_cast<double>(j0)};
  }
  return specfun::hankel0_quarter_i(z) - split_A(z) * std::log(0.5 * z);
}

Complex gamma_m(const PeriodicCell& cell, int m) {
  const double mp = m * cell.p();
  const double g2 = mp * mp - cell.xi() * cell.xi();
  const double mag = std::sqrt(std::fabs(g2));
  if (mag < kWoodThreshold) {
    std::ostringstream os;
    os << "Wood anomaly: gamma_" << m << " = " << mag;
    throw WoodAnomalyError(os.str(), m);
  }
  return g2 > 0.0 ? Complex(mag, 0.0) : Complex(0.0, mag);
}

Complex gper_ewald(const PeriodicCell& cell, double dx, double y, const EwaldConfig& cfg) {
  cfg.validate();
  if (!(y >= 0.0)) throw DomainError("gper_ewald: y must be non-negative");
  check_ratio(cell, cfg);
  const double x = reduce(dx, cell.half_period());
  if (x == 0.0 && y == 0.0) throw SingularPointError("gper_ewald: evaluation at a lattice point");
  return spectral_sum(cell, x, y, cfg) + spatial_sum(cell, x, y, cfg, false);
}

Complex btilde(const PeriodicCell& cell, double dx, double y, const EwaldConfig& cfg) {
  if (dx == 0.0 && y == 0.0) return split_B(0.0) + lattice_sum_origin(cell, cfg);
  if (!(std::fabs(dx) < 2.0 * cell.half_period())) {
    throw DomainError("btilde: |dx| must be smaller than the period");
  }
  const double z = cell.xi() * std::hypot(dx, y);
  return gper_ewald(cell, dx, y, cfg) - split_A(z) * std::log(0.5 * z);
}

Complex lattice_sum_origin(const PeriodicCell& cell, const EwaldConfig& cfg) {
  cfg.validate();
  check_ratio(cell, cfg);
  const double P = cell.half_period();
  const double a = cfg.a;
  const double ratio = cell.xi() * P / a;
  const double ratio_sq = ratio * ratio;

  // Spectral part at x = y = 0: (1/4P) sum_m erfc(gamma_m P / a) / gamma_m.
  auto spectral = [&](int m) {
    const Complex g = ewald_gamma(cell, m);
    return specfun::erfc_complex(g * (P / a)) / (4.0 * P * g);
  };
  Complex sum = spectral(0);
  bool converged = false;
  for (int k = 1; k <= cfg.max_spectral; ++k) {
    const Complex pair = spectral(k) + spectral(-k);
    sum += pair;
    if (k * cell.p() > cell.xi() && std::abs(pair) <= cfg.term_tol * std::max(std::abs(sum), 1e-300)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw TruncationError("lattice_sum_origin: spectral sum hit its mode cap");

  // Spatial images m != 0 at r_m = 2|m|P.
  sum += spatial_sum(cell, 0.0, 0.0, cfg, true);

  // m = 0 image with the E_1 logarithm removed analytically against G(r) itself:
  //   sum_{n>=1} ratio^{2n} / (n n!) / (4 pi) + ln(ratio) / (2 pi) + C / (4 pi) - i/4.
  double coeff = 1.0;
  double tail = 0.0;
  for (int n = 1; n <= 4 * cfg.max_inner + 200; ++n) {
    coeff *= ratio_sq / n;
    const double term = coeff / n;
    tail += term;
    if (n > ratio_sq && term <= cfg.term_tol * tail) break;
  }
  sum += tail / (4.0 * kPi) + std::log(ratio) / (2.0 * kPi) + kEulerGamma / (4.0 * kPi);
  sum -= Complex(0.0, 0.25);
  return sum;
}

}  // namespace cityres::greens
