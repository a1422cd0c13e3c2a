#pragma once

// Special functions needed by the half-plane Green's functions: Bessel J0/Y0,
// the Helmholtz kernel (i/4)H0^(1), complex erfc through the Faddeeva function,
// and the exponential integrals E_n.
//
// All functions are pure and thread-safe.

#include <complex>
#include <span>

namespace cityres::specfun {

using Complex = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286;
inline constexpr double kPi = 3.14159265358979323846;

/// Euler-Mascheroni constant.
constexpr double euler_gamma() noexcept { return kEulerGamma; }

/// Bessel function of the first kind, order zero. Even in x.
double bessel_j0(double x);

/// Bessel function of the second kind, order zero. Throws DomainError for x <= 0.
double bessel_y0(double x);

/// (i/4) H0^(1)(z) = (i/4)(J0(z) + i Y0(z)) for z > 0.
Complex hankel0_quarter_i(double z);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz), valid in the whole plane.
Complex faddeeva_w(Complex z);

/// Complex complementary error function, (2/sqrt(pi)) * int_z^inf exp(-t^2) dt.
Complex erfc_complex(Complex z);

/// Scaled complementary error function exp(z^2) erfc(z).
Complex erfcx_complex(Complex z);

/// Exponential integral E_n(x) = int_1^inf t^-n exp(-x t) dt, n >= 1, x > 0.
double expint_en(int n, double x);

/// Fills out[k] = E_{k+1}(x) for k = 0..out.size()-1.
///
/// Uses the recurrence n E_{n+1} = exp(-x) - x E_n in whichever direction is
/// stable: upward above n ~ x, downward below it.
void expint_sequence(double x, std::span<double> out);

}  // namespace cityres::specfun
