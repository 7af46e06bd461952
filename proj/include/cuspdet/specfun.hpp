#pragma once

#include <complex>

#include "cuspdet/quadrature.hpp"

namespace cuspdet::specfun {

using Complex = std::complex<double>;

// Principal branch (cut along the negative real axis, continuous elsewhere).
Complex log_gamma(Complex z);
Complex digamma(Complex z);

// Complementary error function for complex argument, |z| <= 1e4.
Complex erfc(Complex z);
// exp(z^2) erfc(z); never overflows for Re z >= 0.
Complex erfcx(Complex z);

// Above this argument K is computed from Steed's continued fraction,
// below it from Temme's series.
inline constexpr double bessel_k_crossover = 2.0;

// K_nu(x) for nu in [0,50], x in (0,700).
double bessel_k(double nu, double x);
// exp(x) K_nu(x); same domain but no underflow for large x.
double bessel_k_scaled(double nu, double x);

// exp(x) K_nu(x) for complex order, |Im nu| <= 10, x >= 1, from
// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt.
Complex bessel_k_scaled(Complex nu, double x);

}  // namespace cuspdet::specfun
