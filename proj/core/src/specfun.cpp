#include "cityres/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "cityres/error.hpp"

namespace cityres::specfun {

namespace {

// J0/Y0 come from the power series in long double up to kMillerStart, from
// backward recurrence up to kSeriesCrossover, and from the Hankel asymptotic
// expansion (smallest term ~exp(-2x)) beyond. The series terms peak near
// I0(x), so past kMillerStart their cancellation leaves noise above 1e-15.
constexpr double kMillerStart = 8.0;
constexpr double kSeriesCrossover = 16.0;
constexpr long double kEulerGammaLd = 0.5772156649015328606065120900824024L;
constexpr long double kTwoOverPiLd = 2.0L / 3.141592653589793238462643383279502884L;

long double j0_series(long double x) {
  const long double q = 0.25L * x * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int m = 1; m < 200; ++m) {
    term *= -q / (static_cast<long double>(m) * m);
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) && q < m * m) break;
  }
  return sum;
}

// sum_{m>=1} H_m (-q)^m / (m!)^2 with H_m the harmonic numbers.
long double y0_harmonic_series(long double x) {
  const long double q = 0.25L * x * x;
  long double term = 1.0L;
  long double harmonic = 0.0L;
  long double sum = 0.0L;
  for (int m = 1; m < 200; ++m) {
    term *= -q / (static_cast<long double>(m) * m);
    harmonic += 1.0L / m;
    const long double add = harmonic * term;
    sum += add;
    if (std::fabs(add) < 1e-22L * std::fabs(sum) && q < m * m) break;
  }
  return sum;
}

// Miller's backward recurrence for J_k, normalized by J0 + 2 sum J_2k = 1, with
// Y0 = (2/pi)((ln(x/2) + C) J0 - 2 sum (-1)^k J_2k / k).
void bessel_miller(long double x, long double& j0, long double& y0) {
  const int start = 2 * ((static_cast<int>(x) + 60) / 2);
  long double above = 0.0L;
  long double j = 1e-300L;
  long double norm = 0.0L;
  long double ysum = 0.0L;
  for (int k = start; k >= 1; --k) {
    const long double below = (2.0L * k / x) * j - above;
    above = j;
    j = below;
    const int order = k - 1;
    if (order > 0 && order % 2 == 0) {
      norm += 2.0L * j;
      ysum += ((order / 2) % 2 ? -1.0L : 1.0L) * j / (order / 2);
    }
  }
  norm += j;
  j0 = j / norm;
  y0 = kTwoOverPiLd * ((std::log(0.5L * x) + kEulerGammaLd) * j0 - 2.0L * ysum / norm);
}

// Hankel expansion amplitudes P0(x), Q0(x), truncated at the smallest term.
void hankel_pq(double x, double& p, double& q) {
  p = 1.0;
  q = 0.0;
  double u = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = u * (-(odd * odd)) / (8.0 * k * x);
    if (std::fabs(next) >= last) break;
    u = next;
    last = std::fabs(u);
    // Signs alternate within each of the even and odd subsequences.
    if (k % 2 == 0) {
      p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * u;
    } else {
      q += (((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * u;
    }
    if (last < 1e-18) break;
  }
}

// Weideman's rational expansion of w(z) in the upper half plane:
//   w(z) = 2 p(Z) / (L - iz)^2 + pi^{-1/2} / (L - iz),  Z = (L + iz)/(L - iz).
// The coefficients are discrete cosine sums of exp(-t^2)(L^2 + t^2) on the
// mapped grid t = L tan(theta/2).
constexpr int kWeidemanTerms = 40;

struct WeidemanTable {
  double L;
  std::array<double, kWeidemanTerms> coeff;  // coeff[n-1] multiplies Z^{n-1}
};

const WeidemanTable& weideman_table() {
  static const WeidemanTable table = [] {
    WeidemanTable t{};
    const int n_terms = kWeidemanTerms;
    const int m = 2 * n_terms;
    t.L = std::sqrt(n_terms / std::sqrt(2.0));
    std::array<double, 2 * 2 * kWeidemanTerms> f{};
    for (int k = -m + 1; k <= m - 1; ++k) {
      const double theta = k * kPi / m;
      const double s = t.L * std::tan(0.5 * theta);
      f[static_cast<std::size_t>(k + m)] = std::exp(-s * s) * (t.L * t.L + s * s);
    }
    for (int n = 1; n <= n_terms; ++n) {
      double acc = 0.0;
      for (int k = -m + 1; k <= m - 1; ++k) {
        acc += f[static_cast<std::size_t>(k + m)] * std::cos(kPi * k * n / m);
      }
      t.coeff[static_cast<std::size_t>(n - 1)] = acc / (2.0 * m);
    }
    return t;
  }();
  return table;
}

Complex faddeeva_upper(Complex z) {
  const auto& tab = weideman_table();
  const Complex iz(-z.imag(), z.real());
  const Complex denom = tab.L - iz;
  const Complex big_z = (tab.L + iz) / denom;
  Complex poly = 0.0;
  for (int n = kWeidemanTerms - 1; n >= 0; --n) {
    poly = poly * big_z + tab.coeff[static_cast<std::size_t>(n)];
  }
  return 2.0 * poly / (denom * denom) + (1.0 / std::sqrt(kPi)) / denom;
}

double e1_series(double x) {
  // E1(x) = -C - ln x - sum_{k>=1} (-x)^k / (k k!)
  double term = 1.0;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= -x / k;
    const double add = term / k;
    sum += add;
    if (std::fabs(add) < 1e-17 * std::fabs(sum)) break;
  }
  return -kEulerGamma - std::log(x) - sum;
}

// Modified Lentz evaluation of the continued fraction for E_n, x > 1.
double en_continued_fraction(int n, double x) {
  constexpr double tiny = 1e-300;
  double b = x + n;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * (n - 1 + i);
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) return h * std::exp(-x);
  }
  throw TruncationError("expint_en: continued fraction did not converge");
}

// Power series for E_n, n >= 2, x <= 1.
double en_series(int n, double x) {
  const int nm1 = n - 1;
  double ans = 1.0 / nm1;
  double fact = 1.0;
  for (int i = 1; i < 1000; ++i) {
    fact *= -x / i;
    double delta;
    if (i != nm1) {
      delta = -fact / (i - nm1);
    } else {
      double psi = -kEulerGamma;
      for (int k = 1; k <= nm1; ++k) psi += 1.0 / k;
      delta = fact * (-std::log(x) + psi);
    }
    ans += delta;
    if (std::fabs(delta) < std::fabs(ans) * 1e-17) return ans;
  }
  throw TruncationError("expint_en: series did not converge");
}

}  // namespace

double bessel_j0(double x) {
  const double ax = std::fabs(x);
  if (ax <= kMillerStart) return static_cast<double>(j0_series(ax));
  if (ax <= kSeriesCrossover) {
    long double j0, y0;
    bessel_miller(ax, j0, y0);
    return static_cast<double>(j0);
  }
  double p, q;
  hankel_pq(ax, p, q);
  const double chi = ax - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * ax)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_y0(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_y0: argument must be positive");
  if (x <= kMillerStart) {
    const long double lx = x;
    const long double log_term = std::log(0.5L * lx) + kEulerGammaLd;
    return static_cast<double>(kTwoOverPiLd * (log_term * j0_series(lx) - y0_harmonic_series(lx)));
  }
  if (x <= kSeriesCrossover) {
    long double j0, y0;
    bessel_miller(x, j0, y0);
    return static_cast<double>(y0);
  }
  double p, q;
  hankel_pq(x, p, q);
  const double chi = x - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

Complex hankel0_quarter_i(double z) {
  if (!(z > 0.0)) throw DomainError("hankel0_quarter_i: argument must be positive");
  return {-0.25 * bessel_y0(z), 0.25 * bessel_j0(z)};
}

Complex faddeeva_w(Complex z) {
  if (z.imag() >= 0.0) return faddeeva_upper(z);
  return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

Complex erfc_complex(Complex z) {
  if (z.real() >= 0.0) {
    const Complex iz(-z.imag(), z.real());
    return std::exp(-z * z) * faddeeva_upper(iz);
  }
  return 2.0 - erfc_complex(-z);
}

Complex erfcx_complex(Complex z) {
  if (z.real() >= 0.0) return faddeeva_upper(Complex(-z.imag(), z.real()));
  return 2.0 * std::exp(z * z) - faddeeva_upper(Complex(z.imag(), -z.real()));
}

double expint_en(int n, double x) {
  if (n < 1) throw DomainError("expint_en: order must be >= 1");
  if (!(x > 0.0)) throw DomainError("expint_en: argument must be positive");
  if (x > 1.0) return en_continued_fraction(n, x);
  if (n == 1) return e1_series(x);
  return en_series(n, x);
}

void expint_sequence(double x, std::span<double> out) {
  if (out.empty()) return;
  if (!(x > 0.0)) throw DomainError("expint_sequence: argument must be positive");
  const double ex = std::exp(-x);
  const int count = static_cast<int>(out.size());
  // Pivot order n0 ~ x: recurrence factors x/n (upward) and n/x (downward)
  // are both <= 1 on their side of the pivot.
  int n0 = static_cast<int>(std::ceil(x));
  if (n0 < 1) n0 = 1;
  if (n0 > count) n0 = count;
  out[static_cast<std::size_t>(n0 - 1)] = expint_en(n0, x);
  for (int n = n0 - 1; n >= 1; --n) {
    out[static_cast<std::size_t>(n - 1)] = (ex - n * out[static_cast<std::size_t>(n)]) / x;
  }
  for (int n = n0; n < count; ++n) {
    out[static_cast<std::size_t>(n)] = (ex - x * out[static_cast<std::size_t>(n - 1)]) / n;
  }
}

}  // namespace cityres::specfun
