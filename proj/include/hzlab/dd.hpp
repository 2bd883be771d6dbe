#pragma once
// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving ~31 significant decimal digits. Used where plain double phase/argument
// precision is the accuracy bottleneck (large-t phases, deep convergents,
// fractional parts of huge products). Only the operations needed by this
// project are provided; all are branch-light and allocation-free.

#include <cmath>
#include <cstdint>
#include <limits>

namespace hzlab {

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  constexpr dd() = default;
  constexpr dd(double h) : hi(h), lo(0.0) {}
  constexpr dd(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi + lo; }
};

// Error-free transforms (Dekker/Knuth). two_sum works for any a,b;
// quick_two_sum requires |a| >= |b|.
inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd dd_normalize(double hi, double lo) { return quick_two_sum(hi, lo); }

inline dd dd_add(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  dd t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd dd_add(dd a, double b) {
  dd s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }
inline dd dd_sub(dd a, dd b) { return dd_add(a, dd_neg(b)); }
inline dd dd_sub(dd a, double b) { return dd_add(a, -b); }

inline dd dd_mul(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul(dd a, double b) {
  dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_div(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  dd q = quick_two_sum(q1, q2);
  return dd_add(q, q3);
}

inline dd dd_div(double a, dd b) { return dd_div(dd(a), b); }

inline bool dd_lt(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool dd_le(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo <= b.lo); }

inline dd dd_abs(dd a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? dd_neg(a) : a; }

// sqrt via one dd Newton step on a double seed; relative error ~1e-31.
inline dd dd_sqrt(dd a) {
  if (a.hi == 0.0) return {0.0, 0.0};
  double y = std::sqrt(a.hi);
  dd r = dd_sub(a, dd_mul(dd(y), y));
  double corr = r.hi / (2.0 * y);
  return quick_two_sum(y, corr);
}

// floor/frac. dd_frac returns a value in [0,1); exact integers map to 0.
inline dd dd_floor(dd a) {
  double fh = std::floor(a.hi);
  if (fh != a.hi) return {fh, 0.0};
  double fl = std::floor(a.lo);
  return quick_two_sum(fh, fl);
}

inline dd dd_frac(dd a) {
  dd f = dd_sub(a, dd_floor(a));
  // Normalization can land an ulp outside [0,1); fold back.
  if (f.hi >= 1.0) f = dd_sub(f, 1.0);
  if (f.hi < 0.0) f = dd_add(f, 1.0);
  return f;
}

// exp with |a| <= ~709. Range-reduce by ln2, Taylor on |r| <= ln2/2.
// Relative error ~1e-31; used only on cold paths.
inline dd dd_exp(dd a) {
  static const dd kLn2{6.931471805599452862e-01, 2.319046813846299558e-17};
  if (a.hi > 709.0) return {std::numeric_limits<double>::infinity(), 0.0};
  if (a.hi < -709.0) return {0.0, 0.0};
  double k = std::nearbyint(a.hi / kLn2.hi);
  dd r = dd_sub(a, dd_mul(kLn2, k));
  dd sum = dd_add(dd(1.0), r);
  dd term = r;
  for (int i = 2; i <= 25; ++i) {
    term = dd_mul(term, r);
    term = dd_div(term, dd(static_cast<double>(i)));
    sum = dd_add(sum, term);
    if (std::abs(term.hi) < 1e-33 * std::abs(sum.hi)) break;
  }
  return dd_mul(sum, std::ldexp(1.0, static_cast<int>(k)));
}

// log for a > 0 via one Newton step off the double seed: y1 = y0 + x*exp(-y0) - 1.
inline dd dd_log(dd a) {
  double y0 = std::log(a.hi);
  dd ey = dd_exp(dd_neg(dd(y0)));
  dd corr = dd_sub(dd_mul(a, ey), 1.0);
  return dd_add(dd_add(dd(y0), corr), dd_mul(dd_mul(corr, corr), -0.5));
}

// 2*pi and pi to dd precision, for phase reduction.
inline constexpr dd kDDPi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr dd kDDTwoPi{6.283185307179586232e+00, 2.449293598294706414e-16};

}  // namespace hzlab
