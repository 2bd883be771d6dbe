#pragma once
// Exact combinatorics of the diagonal / off-diagonal split behind the shifted
// fourth-moment sums: enumerate the solutions of
//   prod_{i<=k} (n_i + alpha) = prod_{j<=k} (m_j + alpha),
// parametrize the off-diagonal quadruples by divisor data, classify the
// near-diagonal ones, and evaluate the oscillatory near-diagonal sum directly
// at small T. All structural decisions (solution membership, divisibility)
// use exact integer arithmetic; floating point only enters metric filters.

#include <complex>
#include <cstdint>
#include <vector>

#include "hzlab/diophantine.hpp"
#include "hzlab/moments.hpp"

namespace hzlab {

// ---------------------------------------------------------------------------
// Symbolic shift models for exact solution counting.
// ---------------------------------------------------------------------------

// How the shift enters the polynomial identity:
//  - generic_irrational: no algebraic relation of degree <= k is available,
//    so equality must hold coefficient-by-coefficient in powers of the shift.
//  - quadratic_irrational: the shift satisfies x^2 = r x + s (irreducible over
//    the rationals); higher powers are reduced through the relation before
//    comparing coefficients.
//  - rational: the shift is a/q in lowest terms; denominators are cleared and
//    the two sides compared as plain integers.
enum class ShiftAlgebra { generic_irrational, quadratic_irrational, rational };

struct DiagonalShiftModel {
  ShiftAlgebra algebra = ShiftAlgebra::generic_irrational;
  long long quad_r = 0, quad_s = 0;  // x^2 = quad_r * x + quad_s
  long long rat_a = 1, rat_q = 1;    // shift = rat_a / rat_q, 1 <= a <= q

  static DiagonalShiftModel generic();
  static DiagonalShiftModel quadratic(long long r, long long s);
  static DiagonalShiftModel rational(long long a, long long q);
};

// One instance of the 2k-fold diagonal equation with variables in [1, N].
struct DiagonalEquationInstance {
  int k = 2;  // 2 or 3 entries per side
  DiagonalShiftModel shift;
  long long n_bound = 0;  // N; k=2 admits N <= 500, k=3 admits N <= 80
};

// Ordered solutions (n_1..n_k | m_1..m_k) stored flat with stride 2k, in
// lexicographic order of the left side (then of the right side).
struct DiagonalSolutionSet {
  int k = 2;
  long long count = 0;
  std::vector<std::int32_t> flat;  // count rows of 2k entries each
};

// Exact enumeration by bucketing each ordered k-tuple under a model-specific
// integer key whose equality is equivalent to equality of the two products.
// Throws std::invalid_argument on domain violations (k not in {2,3}, bound
// out of range, reducible quadratic relation, rational shift not in lowest
// terms or outside (0,1]), std::overflow_error if coefficient arithmetic
// leaves the exact 64-bit window, and std::runtime_error if the solution
// list would exceed the in-memory budget.
DiagonalSolutionSet enumerate_diagonal(const DiagonalEquationInstance& instance);

// ---------------------------------------------------------------------------
// Off-diagonal quadruples.
// ---------------------------------------------------------------------------

// A quadruple (n1, n2, n3, n4) of non-negative integers carrying its two
// invariants h1 = n1*n2 - n3*n4 and h2 = n1 + n2 - n3 - n4; off-diagonal
// means (h1, h2) != (0, 0). The divisor parameter of the canonical
// parametrization is recoverable as n3 - n1.
struct OffDiagonalTuple {
  long long n1 = 0, n2 = 0, n3 = 0, n4 = 0;
  long long h1 = 0, h2 = 0;
};

// Builds a tuple from its four entries, computing and storing (h1, h2).
// Throws std::invalid_argument on a negative entry or a diagonal quadruple
// ((h1, h2) == (0, 0)).
OffDiagonalTuple make_offdiagonal_tuple(long long n1, long long n2,
                                        long long n3, long long n4);

// All solutions of h1 = n1*n2 - n3*n4, h2 = n1 + n2 - n3 - n4 with every
// entry in [1, n_max], in the canonical orientation
//   n4 <= n3  and  max(n3, n4) > max(n1, n2).
// For each n = n3 and each positive divisor kd of n*h2 - h1 the candidate
//   n1 = n - kd,   n4 = n - h2 - kd + (n*h2 - h1)/kd,   n2 = h2 + n4 + kd
// is emitted when the bounds and orientation hold. (A zero of n*h2 - h1
// forces n2 = n3 and therefore never contributes.) Rows are ordered by n
// ascending, then by the divisor ascending. Requires (h1, h2) != (0, 0),
// 1 <= n_max <= 10^6, |h1| <= 10^12, |h2| <= 4*10^6.
std::vector<OffDiagonalTuple> parametrize_offdiagonal(long long h1, long long h2,
                                                      long long n_max);

// Reduced divisor coordinates of one canonical tuple: with kd = n3 - n1 and
// g = gcd(kd, h2) (g = kd when h2 = 0), the data below recover n4 through
//   n4 = n3 - g*k_reduced - g*h2_reduced + (n3*h2_reduced - h1_reduced)/k_reduced.
struct RefinedOffDiagonalTuple {
  OffDiagonalTuple tuple;
  long long g = 1;
  long long k_reduced = 1;   // (n3 - n1) / g
  long long h1_reduced = 0;  // h1 / g
  long long h2_reduced = 0;  // h2 / g
};

struct GcdGroup {
  long long g = 1;
  std::vector<RefinedOffDiagonalTuple> rows;  // input order within the group
};

// Groups canonical tuples (all sharing the given h2) by g = gcd(n3 - n1, h2),
// ascending in g. Throws std::invalid_argument if a tuple has a different h2
// or a non-positive divisor n3 - n1, and std::logic_error if g fails to
// divide h1 or the recomputed n4 disagrees with the stored one -- either
// would falsify the divisibility structure the reduction relies on.
std::vector<GcdGroup> gcd_refine(const std::vector<OffDiagonalTuple>& tuples,
                                 long long h2);

// Keeps the tuples with |h1 + h2*alpha| <= C*(n3+alpha)*(n4+alpha)/T^(1-eps),
// preserving order. For rational shifts the gap h1 + h2*alpha is resolved
// exactly (an exact zero always passes). Requires T >= 100, 0 <= eps < 1,
// C > 0.
std::vector<OffDiagonalTuple> near_diagonal_filter(
    const std::vector<OffDiagonalTuple>& tuples, const ShiftParameter& alpha,
    double T, double eps = 0.1, double C = 1.0);

// 2T * (sum_{0 <= n <= T} 1/(n + alpha))^2 through the digamma closed form
// of the inner sum. Requires T >= 10.
double diagonal_main_term(const ShiftParameter& alpha, double T);

// ---------------------------------------------------------------------------
// Oscillatory near-diagonal sum.
// ---------------------------------------------------------------------------

// One term of the oscillatory sum at ordinate t:
//   gap    = h1 + h2*alpha            (exact for rational shifts),
//   phase  = t * gap / ((n3+alpha)*(n4+alpha)),
//   weight = prod_j w_t(n_j + alpha)  (four-fold smoothing weight),
//   value  = weight * (exp(i*phase) - 1) / gap.
// Throws std::invalid_argument when the gap is exactly zero (a diagonal term
// in disguise; arises only for rational shifts) or t < 1.
struct OscillatoryTerm {
  std::complex<double> value{0.0, 0.0};
  double phase = 0.0;
  double gap = 0.0;
  double weight = 0.0;
};

OscillatoryTerm oscillatory_term(const OffDiagonalTuple& tuple,
                                 const ShiftParameter& alpha, double t);

// Direct evaluation of the oscillatory near-diagonal sum at t = 3T/2 over
// the canonically oriented tuples (n4 <= n3; the summand is symmetric in
// n3 <-> n4, so this fixes one representative per unordered pair) with
// entries up to ceil(T^(1/2+eps)), where the smoothing weight confines the
// sums; the result is scaled by window.phi(t/T) = phi(3/2). Exact-zero gaps
// are skipped as diagonal. Returns 0 when nothing survives the filter.
// Requires 100 <= T <= 2*10^4 and a shift whose irrationality exponent is
// certified: rational shifts pass, irrational ones must have a
// continued-fraction exponent estimate below 3.5 (taken from the shift's
// cached expansion when present, otherwise expanded on demand). Throws
// std::runtime_error when the projected divisor-scan work exceeds
// work_budget elementary steps.
std::complex<double> offdiag_oscillatory_estimate(const ShiftParameter& alpha,
                                                  double T,
                                                  const SmoothWindow& window,
                                                  double eps = 0.1, double C = 1.0,
                                                  long long work_budget = 24000000000LL);

}  // namespace hzlab
