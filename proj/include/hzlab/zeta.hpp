#pragma once
// Hurwitz zeta on and off the critical line: an Euler–Maclaurin reference
// evaluator, a smoothly-weighted approximate-functional-equation evaluator,
// the periodic zeta function P(s,λ) by geometric-character partial summation,
// functional-equation residual diagnostics, and a bulk uniform-grid evaluator
// that powers the moment quadratures.

#include <complex>
#include <vector>

#include "hzlab/diophantine.hpp"

namespace hzlab {

// Knobs for the smoothing weight and the AFE truncation. The kernel e^{s^2}
// fixes the weight itself; the decay exponent A and the contour of the
// quadrature route are configuration, as is the truncation target.
struct WeightProfile {
  double decay_exponent = 3.0;    // A in the tail bounds (tau/x)^A
  double contour_abscissa = 1.0;  // Re(s) line for the quadrature route
  double contour_half_height = 12.0;
  double contour_step = 0.01;
  // Truncate the AFE sums once the weighted tail drops below
  // tail_factor * t^{-1/2}, clamped to [1e-10, 1e-2] absolute: the intrinsic
  // O(t^{-1/2}) method error makes a deeper cut pure waste.
  double tail_factor = 0.5;
};

// W(xi) = erfc(log(xi)/2)/2, the closed form of the contour integral
// (1/2πi)∫ xi^{-s} e^{s^2} ds/s. W(1) = 1/2; W(xi) + W(1/xi) = 1; decays
// faster than any power of 1/xi.
double smoothing_weight(double xi);

// The same integral by direct vertical-line trapezoid quadrature — the
// independent route used to validate the closed form. The imaginary part is
// a discretization diagnostic (stays below ~1e-12).
cplx smoothing_weight_contour(double xi, const WeightProfile& profile = {});

// w_t(x) = W(x / tau) with tau = sqrt(t / 2pi). Requires t >= 1, x > 0.
double weight_w(double t, double x, const WeightProfile& profile = {});

// Reference evaluator: N explicit terms (N = max(50, 2|Im s|), grown until
// the Bernoulli-corrected tail meets tol), corrections through B12,
// compensated accumulation, double-double phases when plain-double phase
// rounding would exceed tol. Throws std::domain_error at s = 1 and for
// Re(s) <= -10.5 (beyond the B12 continuation range), std::invalid_argument
// for alpha outside (0,1], tol < 1e-13, or |Im s| > 1e6, and
// std::runtime_error if the term budget cannot reach tol.
cplx hurwitz_zeta_em(cplx s, double alpha, double tol = 1e-12);
inline cplx hurwitz_zeta_em(cplx s, const ShiftParameter& alpha, double tol = 1e-12) {
  return hurwitz_zeta_em(s, alpha.value, tol);
}

// Weighted approximate functional equation at s = 1/2 + it:
//   Σ_m w_t(m+α)(m+α)^{-1/2-it} + χ(1/2+it) Σ_n e(-nα) n^{-1/2+it} w_t(n),
// truncated where the weighted tails fall below the profile target. The
// result differs from ζ(1/2+it, α) by the method's O(t^{-1/2}).
struct AfeResult {
  cplx value;
  double tau = 0.0;     // sqrt(t/2pi)
  double cutoff = 0.0;  // Xi: sums run while m+alpha (resp. n) <= Xi * tau
  long long main_terms = 0;
  long long dual_terms = 0;
};
AfeResult hurwitz_afe(double t, const ShiftParameter& alpha, const WeightProfile& profile = {});

// P(s, λ) = Σ_{n>=1} e(λn) n^{-s} for Re(s) > 0, by partial summation
// against the closed-form geometric character sum, with adaptive cut length
// and summation order chosen to meet tol. Integer λ reduces to ζ(s) for
// Re(s) > 1 and throws std::domain_error otherwise; phases too close to an
// integer to resolve throw std::runtime_error.
cplx periodic_zeta(cplx s, double lambda, double tol = 1e-10);

// |ζ(1-z, α) − χ(1-z)/(2cos(πz/2)) · [e^{-iπz/2} P(z, α) + e^{iπz/2} P(z, -α)]|.
// Exact identity: the residual is pure numerical error. Throws
// std::domain_error when cos(πz/2) is numerically zero.
double functional_equation_residual(cplx z, const ShiftParameter& alpha);

// |ζ(1/2+it, α) − χ(1/2+it) P(1/2-it, -α)|, which the functional equation
// bounds by C t e^{-πt}. Requires t >= 10 so the bound is far below the
// floating-point floor.
double chi_p_identity_residual(double t, const ShiftParameter& alpha);

// User-facing critical-line evaluation: Euler–Maclaurin at or below the tie,
// the AFE above it.
struct EvalPolicy {
  double method_tie_t = 500.0;
  WeightProfile profile{};
};
cplx zeta_critical(double t, const ShiftParameter& alpha, const EvalPolicy& policy = {});

// ζ(1/2 + i(t0 + j h), α) for j = 0..n-1 on a uniform grid. One shared
// Euler–Maclaurin length per 4096-point block and per-term rotation
// recurrences make this the bulk engine for moment quadratures; accuracy is
// ~1e-6 absolute (B6-corrected tail), far inside the quadrature tolerances.
// Deterministic: fixed block size and summation order.
std::vector<cplx> zeta_critical_grid(const ShiftParameter& alpha, double t0, double h,
                                     long long n);

}  // namespace hzlab
