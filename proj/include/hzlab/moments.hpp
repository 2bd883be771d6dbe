#pragma once
// Moment integrals of |ζ(1/2+it, α)|^{2k}: sharp windows [0,T] and [T,2T], a
// smooth compactly-supported window, closed-form predictions to compare
// against, a Hölder-consistency audit, and the seeded value-distribution
// sampler with its disk cache.

#include <functional>
#include <string>
#include <vector>

#include "hzlab/diophantine.hpp"

namespace hzlab {

// Compactly supported bump weight for smoothed moments. phi vanishes
// outside (support_lo, support_hi); mass = ∫ phi.
struct SmoothWindow {
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
  double support_lo = 0.5;
  double support_hi = 2.5;
  double mass = 0.0;
};

// phi(u) = exp(1 - 1/((u-1/2)(5/2-u))) on (1/2, 5/2), zero outside; the
// scaling puts the maximum at exactly 1 (attained at u = 3/2). mass is
// computed by composite Simpson to ~1e-12.
SmoothWindow make_bump_window();

enum class MomentMode { sharp_0_T, sharp_T_2T, smooth };
const char* moment_mode_name(MomentMode mode);
MomentMode parse_moment_mode(const std::string& name);

// Quadrature controls. The grid step is step_factor / log T (or
// step_override when positive); composite Simpson runs on that grid and on
// its midpoint refinement, and the halving difference drives the error
// estimate.
struct QuadratureSpec {
  double step_factor = 0.05;
  double step_override = 0.0;
  long long max_points = 200000000;
};

struct MomentEstimate {
  double value = 0.0;
  double k = 0.0;
  double T = 0.0;
  std::string alpha_tag;
  MomentMode mode = MomentMode::sharp_0_T;
  long long quad_points = 0;
  double quad_error_estimate = 0.0;
  double wall_seconds = 0.0;
};

// ∫ w(t) |ζ(1/2+it, α)|^{2k} dt with w ≡ 1 on [0,T] or [T,2T], or
// w(t) = window->phi(t/T) on [T/2, 5T/2]. Requires T >= 100, k in [0,4],
// and a window for smooth mode. Throws std::runtime_error when the grid
// would exceed spec.max_points or the halving estimate ends up above 5% of
// the value. One ζ-grid pass serves both Simpson levels; several k values
// can share the pass via moment_integrals.
MomentEstimate moment_integral(const ShiftParameter& alpha, double T, double k, MomentMode mode,
                               const QuadratureSpec& spec = {},
                               const SmoothWindow* window = nullptr);
std::vector<MomentEstimate> moment_integrals(const ShiftParameter& alpha, double T,
                                             const std::vector<double>& ks, MomentMode mode,
                                             const QuadratureSpec& spec = {},
                                             const SmoothWindow* window = nullptr);

// c(α) = lim_N (Σ_{0<=n<=N} 1/(n+α) − log N), computed via the digamma
// representation of the accelerated partial sums; absolute accuracy ~1e-13.
// Requires α in (0,1]. c(1) = Euler's γ.
double c_alpha(double alpha);
inline double c_alpha(const ShiftParameter& alpha) { return c_alpha(alpha.value); }

// T log T + T (c(α) + γ − 1 − log 2π): the sharp-[0,T] second-moment main
// term. Requires T >= 100.
double second_moment_prediction(const ShiftParameter& alpha, double T);

// T (log T)^4 / (2 π² q) · Π_{p | q} (1 − 1/(p+1)) for the reduced fraction
// a/q, q >= 3: the rational-shift fourth-moment main term.
double rational_fourth_prediction(long long a, long long q, double T);

// Conjectural main term k! T (log T)^k, mass-weighted in smooth mode
// (k = 2 smooth: 2·mass·T(log T)²). k in {1,2}; smooth mode needs a window.
double conjecture_prediction(double T, int k, MomentMode mode,
                             const SmoothWindow* window = nullptr);

// Hölder chain on one sharp-[0,T] quadrature pass: M_{2k} <= T^{1-k/2} M4^{k/2}
// for k in {0, 1/2, 1, 3/2}, plus the reverse bound M4 >= M2²/T.
struct HolderRow {
  double k = 0.0;
  double m2k = 0.0;    // computed moment
  double bound = 0.0;  // T^{1-k/2} M4^{k/2}
  double slack = 0.0;  // bound / m2k
  bool ok = false;     // m2k <= bound within quadrature error
};
struct HolderReport {
  double T = 0.0;
  std::string alpha_tag;
  double m4 = 0.0;
  double m4_quad_error = 0.0;
  std::vector<HolderRow> rows;
  bool m4_lower_ok = false;  // M4 >= M2²/T within quadrature error
  bool all_ok = false;
};
HolderReport holder_consistency(const ShiftParameter& alpha, double T,
                                const QuadratureSpec& spec = {});

// One sample of the value-distribution experiment: t, and ζ(1/2+it, α).
struct SamplePoint {
  double t = 0.0;
  double re = 0.0;
  double im = 0.0;
};

// n seeded samples with t uniform on [T, 2T] (counter-based generator, so
// sample i is independent of evaluation order). Results are cached as CSV
// under the resolved cache directory keyed by (α-tag, T, seed, generator
// version); a matching cache file with at least n rows is reused verbatim.
std::vector<SamplePoint> distribution_samples(const ShiftParameter& alpha, double T,
                                              long long n_samples, unsigned long long seed,
                                              const std::string& cache_dir = "",
                                              bool* cache_hit = nullptr,
                                              std::string* cache_path = nullptr);

struct DistributionReport {
  double T = 0.0;
  long long n_samples = 0;
  unsigned long long seed = 0;
  // Kolmogorov–Smirnov distances: |z|²/log T against Exp(1), and
  // Re/Im of z/√(log T) against centered normals under both variance
  // conventions (1/2 per coordinate, and 1 per coordinate).
  double ks_modulus = 0.0;
  double ks_real_var_half = 0.0;
  double ks_real_var_unit = 0.0;
  double ks_imag_var_half = 0.0;
  double ks_imag_var_unit = 0.0;
  // Empirical moments m_k of |z|²/log T, k = 1..4.
  double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
  bool cache_hit = false;
  std::string cache_path;
};

// Draws (or reloads) the samples and computes the report. Requires
// T >= 1e3 and n_samples >= 100. Deterministic for fixed (α, T, n, seed).
DistributionReport gaussian_sample_and_test(const ShiftParameter& alpha, double T,
                                            long long n_samples, unsigned long long seed,
                                            const std::string& cache_dir = "");

}  // namespace hzlab
