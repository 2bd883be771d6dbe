#pragma once
// Continued fractions with exact integer convergents, shift-parameter
// construction (presets, rationals, synthetic Liouville-type numbers),
// irrationality-exponent estimation, distance sums Σ ‖hα‖^(−η), and the
// bilinear exponential sum Σ_h Σ_k e(−α d h k).

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hzlab/dd.hpp"
#include "hzlab/i128.hpp"

namespace hzlab {

using cplx = std::complex<double>;

struct ContinuedFraction {
  // a[k] are the partial quotients (a[0] = floor(alpha), a[k] >= 1 after);
  // p[k]/q[k] the convergents satisfying the standard recursions exactly.
  std::vector<i128> a, p, q;
  // Expansion stopped because the value's precision cannot support deeper
  // quotients (double or double-double resolution guard).
  bool precision_exhausted = false;
  // Expansion stopped because p/q left the exact 128-bit integer range.
  bool overflow_truncated = false;

  size_t size() const { return q.size(); }
};

enum class ShiftKind { rational, irrational };

// The shift alpha in (0,1]: plain double view, full-precision dd view, exact
// rational data when applicable, and a stable tag used in cache keys and
// reports.
struct ShiftParameter {
  double value = 1.0;
  dd value_dd{1.0};
  ShiftKind kind = ShiftKind::rational;
  long long rat_a = 1, rat_q = 1;  // meaningful iff kind == rational
  std::string tag = "1";
  std::shared_ptr<const ContinuedFraction> cf_cache;  // set for constructed irrationals

  bool is_rational() const { return kind == ShiftKind::rational; }
};

// Preset and constructed shifts.
ShiftParameter shift_golden();                       // (sqrt(5)-1)/2
ShiftParameter shift_sqrt2m1();                      // sqrt(2)-1
ShiftParameter shift_rational(long long a, long long q);
ShiftParameter shift_one();                          // alpha = 1
// Liouville-type number: partial quotients a_{k+1} = ceil(q_k^(3(g-2))) so a
// growth parameter g > 2 manufactures huge convergent gaps (g = 2 degenerates
// to the all-ones golden tail). Depth caps the exact construction; the value
// is carried to double-double precision.
ShiftParameter shift_liouville(double growth_exponent, int depth);
// Decimal literals are rational: "0.37" becomes 37/100 exactly.
ShiftParameter shift_from_decimal(const std::string& text);
// CLI-facing parser: "golden" | "sqrt2m1" | "rational:a/q" |
// "liouville:g,depth" | decimal literal. Throws std::invalid_argument.
ShiftParameter parse_shift(const std::string& spec);

// Continued-fraction expansion of a double (guard: stops once
// |alpha - p/q| < 4 ulp(alpha), flagging precision_exhausted) or of a
// ShiftParameter (exact for rationals, dd-guarded for dd-backed irrationals,
// cached construction for Liouville shifts). Convergents with q > max_q are
// not stored.
ContinuedFraction expand_cf(double alpha, i128 max_q);
ContinuedFraction expand_cf(const ShiftParameter& alpha, i128 max_q);

// 1 + max of log q_{k+1} / log q_k over the last third of the convergent
// pairs with q_k > 10 (finite-data proxy for the limsup in the irrationality
// exponent formula). Throws std::runtime_error when no admissible pair
// exists.
double irrationality_exponent_estimate(const ContinuedFraction& cf);

// True iff q_{k+1} <= C q_k^(2-delta) for every stored pair with q_k > 100.
bool growth_check(const ContinuedFraction& cf, double delta, double C = 10.0);

// Distance to the nearest integer, in [0, 1/2].
double nearest_int_dist(double x);

struct FractionalPartSum {
  std::string alpha_tag;
  long long N = 0;
  double eta = 0.0;
  double value = 0.0;
};

// Σ_{h=1}^{N} ‖hα‖^(−η) for irrational α, with ‖hα‖ resolved in
// double-double so that Liouville-scale spikes (‖hα‖ ~ 1e-20) survive.
// Compensated accumulation; O(N). Throws std::invalid_argument for rational
// α (the sum hits a division by zero at h = q).
FractionalPartSum distance_power_sum(const ShiftParameter& alpha, long long N, double eta);

// Σ_{h≤x} Σ_{k≤y} e(−α d h k) in O(x) via the closed-form inner geometric
// sum. Exact rational phases are detected exactly (inner sum = y).
cplx bilinear_exp_sum(const ShiftParameter& alpha, long long d, long long x, long long y);

}  // namespace hzlab
