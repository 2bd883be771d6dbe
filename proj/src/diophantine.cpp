#include "hzlab/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "hzlab/special.hpp"

namespace hzlab {

namespace {

// Generic expansion of a dd value. guard_abs is the resolution floor: once
// |alpha - p/q| drops below it the quotients would be noise, so we stop and
// flag. max_q bounds the stored denominators.
ContinuedFraction expand_dd_value(dd alpha, i128 max_q, double guard_abs) {
  ContinuedFraction cf;
  dd x = alpha;
  i128 p_prev2 = 1, q_prev2 = 0;  // p_{-1}, q_{-1}
  i128 p_prev = 0, q_prev = 1;    // filled after first step
  for (int k = 0; k < 200; ++k) {
    dd fl = dd_floor(x);
    if (fl.hi >= 1.7e38) { cf.overflow_truncated = true; break; }
    i128 ak = static_cast<i128>(fl.hi) + static_cast<i128>(fl.lo);
    i128 pk, qk, t;
    bool ok = k == 0 ? (pk = ak, qk = 1, true)
                     : (checked_mul(ak, p_prev, t) && checked_add(t, p_prev2, pk) &&
                        checked_mul(ak, q_prev, t) && checked_add(t, q_prev2, qk));
    if (!ok) { cf.overflow_truncated = true; break; }
    if (qk > max_q) break;
    if (k > 0) { p_prev2 = p_prev; q_prev2 = q_prev; }
    p_prev = pk; q_prev = qk;
    cf.a.push_back(ak);
    cf.p.push_back(pk);
    cf.q.push_back(qk);
    dd err = dd_abs(dd_sub(alpha, dd_div(i128_to_dd(pk), i128_to_dd(qk))));
    dd f = dd_sub(x, dd(static_cast<double>(ak)));  // ak < 2^53 here unless huge
    if (fl.hi > 9e15) f = dd_sub(x, i128_to_dd(ak));
    if (f.hi == 0.0 && f.lo == 0.0) break;  // exact rational termination
    if (err.hi < guard_abs) { cf.precision_exhausted = true; break; }
    x = dd_div(dd(1.0), f);
  }
  return cf;
}

// Exact Euclid for a/q (already reduced).
ContinuedFraction expand_rational(i128 a, i128 q, i128 max_q) {
  ContinuedFraction cf;
  i128 num = a, den = q;
  i128 p_prev2 = 1, q_prev2 = 0, p_prev = 0, q_prev = 1;
  for (int k = 0; den != 0 && k < 256; ++k) {
    i128 ak = num / den;
    i128 rem = num % den;
    i128 pk, qk, t;
    bool ok = k == 0 ? (pk = ak, qk = 1, true)
                     : (checked_mul(ak, p_prev, t) && checked_add(t, p_prev2, pk) &&
                        checked_mul(ak, q_prev, t) && checked_add(t, q_prev2, qk));
    if (!ok) { cf.overflow_truncated = true; break; }
    if (qk > max_q) break;
    if (k > 0) { p_prev2 = p_prev; q_prev2 = q_prev; }
    p_prev = pk; q_prev = qk;
    cf.a.push_back(ak);
    cf.p.push_back(pk);
    cf.q.push_back(qk);
    num = den;
    den = rem;
  }
  return cf;
}

constexpr double kDDGuardScale = 4.0 * 4.93e-32;  // 4 * 2^-104

dd golden_dd() { return dd_mul(dd_sub(dd_sqrt(dd(5.0)), 1.0), 0.5); }
dd sqrt2m1_dd() { return dd_sub(dd_sqrt(dd(2.0)), 1.0); }

// Inner geometric sum Σ_{k=1}^{y} e(−γk) with γ carried in dd:
// e(−γ(y+1)/2) · sin(πγy)/sin(πγ), and y itself when γ is integral.
cplx inner_character_sum(dd gamma, long long y) {
  if (gamma.hi == 0.0 && gamma.lo == 0.0) return {static_cast<double>(y), 0.0};
  // sin(pi γ) for γ in (0,1), evaluated at whichever end is closer for
  // full relative accuracy (sin(pi γ) = sin(pi (1-γ))).
  dd w = gamma.hi <= 0.5 ? gamma : dd_sub(dd(1.0), gamma);
  double sden = std::sin(M_PI * static_cast<double>(w));
  // sin(pi γ y): reduce γy mod 2.
  dd gy = dd_mul(gamma, static_cast<double>(y));
  double u2 = 2.0 * static_cast<double>(dd_frac(dd_mul(gy, 0.5)));
  double snum = std::sin(M_PI * u2);
  double vph = static_cast<double>(dd_frac(dd_mul(gamma, (static_cast<double>(y) + 1.0) * 0.5)));
  cplx phase = additive_character(-vph);
  return phase * (snum / sden);
}

long long checked_ll(i128 v, const char* what) {
  if (v > (i128)9.2e18 || v < -(i128)9.2e18)
    throw std::overflow_error(std::string("value out of 64-bit range: ") + what);
  return static_cast<long long>(v);
}

}  // namespace

ShiftParameter shift_golden() {
  ShiftParameter s;
  s.value_dd = golden_dd();
  s.value = static_cast<double>(s.value_dd);
  s.kind = ShiftKind::irrational;
  s.tag = "golden";
  return s;
}

ShiftParameter shift_sqrt2m1() {
  ShiftParameter s;
  s.value_dd = sqrt2m1_dd();
  s.value = static_cast<double>(s.value_dd);
  s.kind = ShiftKind::irrational;
  s.tag = "sqrt2m1";
  return s;
}

ShiftParameter shift_rational(long long a, long long q) {
  if (q <= 0 || a <= 0 || a > q)
    throw std::invalid_argument("shift_rational: need 1 <= a <= q");
  long long g = std::gcd(a, q);
  a /= g;
  q /= g;
  ShiftParameter s;
  s.kind = ShiftKind::rational;
  s.rat_a = a;
  s.rat_q = q;
  s.value_dd = dd_div(dd(static_cast<double>(a)), dd(static_cast<double>(q)));
  s.value = static_cast<double>(s.value_dd);
  s.tag = std::to_string(a) + "/" + std::to_string(q);
  if (a == q) s.tag = "1";
  return s;
}

ShiftParameter shift_one() { return shift_rational(1, 1); }

ShiftParameter shift_liouville(double growth_exponent, int depth) {
  if (!(growth_exponent >= 2.0))
    throw std::invalid_argument("shift_liouville: growth exponent must be >= 2");
  if (depth < 4 || depth > 30)
    throw std::invalid_argument("shift_liouville: depth must be in [4, 30]");
  const double e = 3.0 * (growth_exponent - 2.0);
  const bool e_integral = e == std::floor(e) && e <= 40.0;

  ContinuedFraction cf;
  cf.a = {0};
  cf.p = {0};
  cf.q = {1};
  i128 p_prev2 = 1, q_prev2 = 0, p_prev = 0, q_prev = 1;
  long double next_a_ld = 1.0L;  // a_{K+1} estimate at the point we stopped
  for (int k = 1; k <= depth; ++k) {
    // a_k = ceil(q_{k-1}^e); exact integer power when e is a small integer,
    // long-double otherwise.
    i128 ak;
    next_a_ld = ceill(powl(static_cast<long double>(q_prev), static_cast<long double>(e)));
    if (e_integral) {
      i128 pw = 1;
      bool ok = true;
      for (int j = 0; j < static_cast<int>(e) && ok; ++j) ok = checked_mul(pw, q_prev, pw);
      if (!ok) { cf.overflow_truncated = true; break; }
      ak = pw;
    } else {
      if (next_a_ld >= 1.6e38L) { cf.overflow_truncated = true; break; }
      ak = static_cast<i128>(next_a_ld);
    }
    if (ak < 1) ak = 1;
    i128 pk, qk, t;
    if (!(checked_mul(ak, p_prev, t) && checked_add(t, p_prev2, pk) &&
          checked_mul(ak, q_prev, t) && checked_add(t, q_prev2, qk))) {
      cf.overflow_truncated = true;
      break;
    }
    p_prev2 = p_prev; q_prev2 = q_prev;
    p_prev = pk; q_prev = qk;
    cf.a.push_back(ak);
    cf.p.push_back(pk);
    cf.q.push_back(qk);
  }
  if (cf.size() < 4)
    throw std::overflow_error("shift_liouville: fewer than 4 exact convergents before overflow");
  if (!cf.overflow_truncated)
    next_a_ld = ceill(powl(static_cast<long double>(q_prev), static_cast<long double>(e)));

  // Tail value x = [a_{K+1}; a_{K+2}, ...]. Huge next quotient: the tail is
  // a_{K+1} up to an O(1) slack that the 1/(q_K x + q_{K-1})^2 sensitivity
  // makes invisible. Slow growth: extend virtually in long double and fold
  // back; the O(1) seed error is crushed by the product of squared tail
  // denominators (>= Fibonacci^2 over 80 levels).
  dd x;
  if (cf.overflow_truncated || next_a_ld >= 1e16L) {
    x = dd(static_cast<double>(std::min(next_a_ld, 1e300L)));
  } else {
    std::vector<double> virt;
    long double qv_prev2 = static_cast<long double>(q_prev2),
                qv_prev = static_cast<long double>(q_prev);
    long double av = next_a_ld;
    for (int j = 0; j < 80; ++j) {
      if (av < 1.0L) av = 1.0L;
      virt.push_back(static_cast<double>(av));
      long double qv = av * qv_prev + qv_prev2;
      qv_prev2 = qv_prev;
      qv_prev = qv;
      if (av >= 1e16L || qv > 1e200L) break;
      av = ceill(powl(qv, static_cast<long double>(e)));
    }
    x = dd(virt.back() + 0.5);
    for (int j = static_cast<int>(virt.size()) - 2; j >= 0; --j)
      x = dd_add(dd(virt[j]), dd_div(dd(1.0), x));
  }
  dd num = dd_add(dd_mul(i128_to_dd(p_prev), x), i128_to_dd(p_prev2));
  dd den = dd_add(dd_mul(i128_to_dd(q_prev), x), i128_to_dd(q_prev2));
  dd alpha = dd_div(num, den);

  ShiftParameter s;
  s.kind = ShiftKind::irrational;
  s.value_dd = alpha;
  s.value = static_cast<double>(alpha);
  char buf[64];
  snprintf(buf, sizeof buf, "liouville:%g,%d", growth_exponent, depth);
  s.tag = buf;
  s.cf_cache = std::make_shared<const ContinuedFraction>(std::move(cf));
  return s;
}

ShiftParameter shift_from_decimal(const std::string& text) {
  // A decimal literal is a rational with a power-of-ten denominator.
  size_t dot = text.find('.');
  std::string digits = dot == std::string::npos ? text : text.substr(0, dot) + text.substr(dot + 1);
  int frac_digits = dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
  if (digits.empty() || frac_digits > 17 || digits.size() > 18)
    throw std::invalid_argument("decimal shift: too many digits for exact rational form");
  for (char c : digits)
    if (c < '0' || c > '9') throw std::invalid_argument("decimal shift: not a plain decimal");
  long long num = std::stoll(digits);
  long long den = 1;
  for (int i = 0; i < frac_digits; ++i) den *= 10;
  if (num <= 0 || num > den)
    throw std::invalid_argument("decimal shift: value must lie in (0, 1]");
  return shift_rational(num, den);
}

ShiftParameter parse_shift(const std::string& spec) {
  if (spec == "golden") return shift_golden();
  if (spec == "sqrt2m1") return shift_sqrt2m1();
  if (spec == "1") return shift_one();
  if (spec.rfind("rational:", 0) == 0) {
    std::string body = spec.substr(9);
    size_t slash = body.find('/');
    if (slash == std::string::npos)
      throw std::invalid_argument("rational shift: expected rational:a/q");
    return shift_rational(std::stoll(body.substr(0, slash)), std::stoll(body.substr(slash + 1)));
  }
  if (spec.rfind("liouville:", 0) == 0) {
    std::string body = spec.substr(10);
    size_t comma = body.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("liouville shift: expected liouville:exponent,depth");
    return shift_liouville(std::stod(body.substr(0, comma)),
                           std::stoi(body.substr(comma + 1)));
  }
  return shift_from_decimal(spec);
}

ContinuedFraction expand_cf(double alpha, i128 max_q) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw std::invalid_argument("expand_cf: alpha must lie in (0, 1]");
  double ulp = std::nextafter(alpha, 2.0) - alpha;
  return expand_dd_value(dd(alpha), max_q, 4.0 * ulp);
}

ContinuedFraction expand_cf(const ShiftParameter& alpha, i128 max_q) {
  if (alpha.is_rational()) return expand_rational(alpha.rat_a, alpha.rat_q, max_q);
  if (alpha.cf_cache) {
    ContinuedFraction cf = *alpha.cf_cache;
    while (!cf.q.empty() && cf.q.back() > max_q) {
      cf.a.pop_back();
      cf.p.pop_back();
      cf.q.pop_back();
    }
    return cf;
  }
  return expand_dd_value(alpha.value_dd, max_q,
                         kDDGuardScale * std::abs(alpha.value));
}

double irrationality_exponent_estimate(const ContinuedFraction& cf) {
  if (cf.size() < 4)
    throw std::runtime_error("irrationality exponent: need at least 4 convergents");
  std::vector<double> ratios;
  for (size_t k = 0; k + 1 < cf.size(); ++k) {
    if (cf.q[k] > 10) {
      long double lq = logl(static_cast<long double>(cf.q[k]));
      long double lq1 = logl(static_cast<long double>(cf.q[k + 1]));
      ratios.push_back(static_cast<double>(lq1 / lq));
    }
  }
  if (ratios.empty())
    throw std::runtime_error("irrationality exponent: no convergent pair with q > 10");
  // The early ratios reflect small-denominator noise (e.g. Fibonacci 13->21
  // gives 1.19); the limsup proxy uses only the last third of the pairs.
  size_t m = ratios.size();
  size_t start = m - (m + 2) / 3;
  double best = 0.0;
  for (size_t j = start; j < m; ++j) best = std::max(best, ratios[j]);
  return 1.0 + best;
}

bool growth_check(const ContinuedFraction& cf, double delta, double C) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("growth_check: delta must lie in (0,1)");
  for (size_t k = 0; k + 1 < cf.size(); ++k) {
    if (cf.q[k] > 100) {
      long double bound = C * powl(static_cast<long double>(cf.q[k]),
                                   static_cast<long double>(2.0 - delta));
      if (static_cast<long double>(cf.q[k + 1]) > bound) return false;
    }
  }
  return true;
}

double nearest_int_dist(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("nearest_int_dist: non-finite input");
  return std::abs(x - std::nearbyint(x));
}

FractionalPartSum distance_power_sum(const ShiftParameter& alpha, long long N, double eta) {
  if (alpha.is_rational())
    throw std::invalid_argument("distance_power_sum: rational shift has exact zeros");
  if (N < 1 || N > 100000000LL)
    throw std::invalid_argument("distance_power_sum: N must lie in [1, 1e8]");
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::invalid_argument("distance_power_sum: eta must lie in (0, 1]");
  double sum = 0.0, comp = 0.0;
  for (long long h = 1; h <= N; ++h) {
    dd f = dd_frac(dd_mul(alpha.value_dd, static_cast<double>(h)));
    dd dist_dd = f.hi <= 0.5 ? f : dd_sub(dd(1.0), f);
    double dist = static_cast<double>(dist_dd);
    double term = std::pow(dist, -eta);
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  FractionalPartSum out;
  out.alpha_tag = alpha.tag;
  out.N = N;
  out.eta = eta;
  out.value = sum;
  return out;
}

cplx bilinear_exp_sum(const ShiftParameter& alpha, long long d, long long x, long long y) {
  if (d < 1) throw std::invalid_argument("bilinear_exp_sum: d >= 1 required");
  if (x < 1 || y < 1 || x > 1000000 || y > 1000000)
    throw std::invalid_argument("bilinear_exp_sum: x, y must lie in [1, 1e6]");
  cplx sum = 0.0, comp = 0.0;
  if (alpha.is_rational()) {
    // Phases live on the exact q-torsion grid: gamma_h = ((a d h) mod q)/q.
    i128 q = alpha.rat_q;
    i128 step = (static_cast<i128>(alpha.rat_a) * d) % q;
    i128 m = 0;
    dd inv_q = dd_div(dd(1.0), dd(static_cast<double>(alpha.rat_q)));
    for (long long h = 1; h <= x; ++h) {
      m += step;
      if (m >= q) m -= q;
      cplx inner = m == 0
                       ? cplx(static_cast<double>(y), 0.0)
                       : inner_character_sum(dd_mul(inv_q, static_cast<double>(checked_ll(m, "residue"))), y);
      cplx yv = inner - comp;
      cplx t = sum + yv;
      comp = (t - sum) - yv;
      sum = t;
    }
    return sum;
  }
  dd ad = dd_mul(alpha.value_dd, static_cast<double>(d));
  for (long long h = 1; h <= x; ++h) {
    dd gamma = dd_frac(dd_mul(ad, static_cast<double>(h)));
    cplx inner = inner_character_sum(gamma, y);
    cplx yv = inner - comp;
    cplx t = sum + yv;
    comp = (t - sum) - yv;
    sum = t;
  }
  return sum;
}

}  // namespace hzlab
