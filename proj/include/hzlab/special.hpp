#pragma once
// Complex special functions shared by every other module: principal-branch
// log-gamma, the functional-equation factor chi(s), the Gaussian smoothing
// kernel, the additive character e(x) = exp(2*pi*i*x), and real digamma.

#include <complex>

namespace hzlab {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)
inline constexpr double kTwoPi = 6.2831853071795864769;

// Principal branch of log Gamma(z): the analytic continuation of the real
// log Gamma from (0,inf) to the plane cut along (-inf,0]. Relative accuracy
// ~1e-13 for |z| <= 1e4. Throws std::domain_error at the poles (z a
// non-positive real integer).
cplx log_gamma(cplx z);

// chi(s) = pi^(s-1/2) * Gamma((1-s)/2) / Gamma(s/2), the factor in
// zeta(s) = chi(s) zeta(1-s). Computed in log space; |chi(1/2+it)| = 1.
// Throws std::domain_error where the gamma quotient has poles
// (s in {1,3,5,...} or {0,-2,-4,...}).
cplx chi_factor(cplx s);

// Smoothing kernel G(z) = exp(z^2): entire, even, conjugate-symmetric,
// |G(x+iy)| = e^(x^2) * e^(-y^2) decays as a Gaussian in the imaginary
// direction on any fixed vertical strip.
inline cplx gaussian_kernel(cplx z) { return std::exp(z * z); }

// e(x) = exp(2*pi*i*x). The argument is reduced mod 1 before exponentiation
// so accuracy is uniform in |x| (up to 2^52 where the reduction is exact).
cplx additive_character(double x);

// Real digamma psi(x) for x > 0, absolute accuracy ~1e-14.
double digamma(double x);

}  // namespace hzlab
