#include "hzlab/offdiag.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hzlab/i128.hpp"
#include "hzlab/special.hpp"
#include "hzlab/zeta.hpp"

namespace hzlab {

namespace {

// Exact-to-64-bit narrowing window for bucket keys; anything larger means the
// coefficient arithmetic left the range where equality tests are exact.
constexpr i128 kNarrowCap = i128(1) << 62;

long long narrow_checked(i128 v, const char* what) {
  if (v >= kNarrowCap || v <= -kNarrowCap)
    throw std::overflow_error(std::string(what) + ": coefficient arithmetic overflow");
  return static_cast<long long>(v);
}

struct KeyPair {
  long long a = 0, b = 0;
  bool operator==(const KeyPair& o) const { return a == o.a && b == o.b; }
};

struct KeyPairHash {
  std::size_t operator()(const KeyPair& k) const {
    auto mix = [](unsigned long long x) {
      x ^= x >> 30;
      x *= 0xBF58476D1CE4E5B9ull;
      x ^= x >> 27;
      x *= 0x94D049BB133111EBull;
      x ^= x >> 31;
      return x;
    };
    unsigned long long h = mix(static_cast<unsigned long long>(k.a) + 0x9E3779B97F4A7C15ull);
    h ^= mix(static_cast<unsigned long long>(k.b) + (h << 6) + (h >> 2));
    return static_cast<std::size_t>(h);
  }
};

bool is_perfect_square(i128 v) {
  if (v < 0) return false;
  i128 r = static_cast<i128>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v;
}

struct Kahan {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

// Signed gap h1 + h2*alpha; rational shifts resolve it exactly and report an
// exact zero through *exact_zero.
double tuple_gap(const ShiftParameter& alpha, long long h1, long long h2, bool* exact_zero) {
  if (alpha.is_rational()) {
    const i128 num = static_cast<i128>(h1) * alpha.rat_q + static_cast<i128>(h2) * alpha.rat_a;
    if (exact_zero) *exact_zero = (num == 0);
    return static_cast<double>(num) / static_cast<double>(alpha.rat_q);
  }
  if (exact_zero) *exact_zero = false;
  const dd g = dd_add(dd_mul(alpha.value_dd, static_cast<double>(h2)), static_cast<double>(h1));
  return g.hi;
}

void validate_instance(const DiagonalEquationInstance& inst) {
  if (inst.k != 2 && inst.k != 3)
    throw std::invalid_argument("enumerate_diagonal: k must be 2 or 3");
  if (inst.n_bound < 1)
    throw std::invalid_argument("enumerate_diagonal: n_bound must be at least 1");
  if (inst.k == 2 && inst.n_bound > 500)
    throw std::invalid_argument("enumerate_diagonal: k=2 admits n_bound <= 500");
  if (inst.k == 3 && inst.n_bound > 80)
    throw std::invalid_argument("enumerate_diagonal: k=3 admits n_bound <= 80");
  const DiagonalShiftModel& m = inst.shift;
  if (m.algebra == ShiftAlgebra::quadratic_irrational) {
    const i128 disc = static_cast<i128>(m.quad_r) * m.quad_r + 4 * static_cast<i128>(m.quad_s);
    if (disc <= 0 || is_perfect_square(disc))
      throw std::invalid_argument(
          "enumerate_diagonal: quadratic relation must have a positive non-square "
          "discriminant (irreducible with a real root)");
  } else if (m.algebra == ShiftAlgebra::rational) {
    if (m.rat_q < 1 || m.rat_a < 1 || m.rat_a > m.rat_q ||
        std::gcd(m.rat_a, m.rat_q) != 1)
      throw std::invalid_argument(
          "enumerate_diagonal: rational shift must be a/q in lowest terms with 1 <= a <= q");
  }
}

// Model-specific integer key whose equality across two ordered k-tuples is
// equivalent to equality of prod (n_i + alpha).
KeyPair side_key(const DiagonalShiftModel& m, int k, const long long* e) {
  if (k == 2) {
    const long long e1 = e[0] + e[1];
    const long long e2 = e[0] * e[1];
    switch (m.algebra) {
      case ShiftAlgebra::generic_irrational:
      case ShiftAlgebra::quadratic_irrational:
        // The quadratic-power coefficient is 1 on both sides, so the relation
        // never enters at degree two: equality is coefficient-wise.
        return {e1, e2};
      case ShiftAlgebra::rational: {
        i128 p;
        const i128 m1 = static_cast<i128>(m.rat_q) * e[0] + m.rat_a;
        const i128 m2 = static_cast<i128>(m.rat_q) * e[1] + m.rat_a;
        if (!checked_mul(m1, m2, p))
          throw std::overflow_error("enumerate_diagonal: coefficient arithmetic overflow");
        return {narrow_checked(p, "enumerate_diagonal"), 0};
      }
    }
  }
  const long long e1 = e[0] + e[1] + e[2];
  const long long e2 = e[0] * e[1] + e[0] * e[2] + e[1] * e[2];
  const long long e3 = e[0] * e[1] * e[2];
  switch (m.algebra) {
    case ShiftAlgebra::generic_irrational: {
      // The cubic coefficient is 1 on both sides; pack (e1, e2) injectively
      // (e2 <= 3N^2) so two components carry the three conditions.
      const long long pack = e1 * (3 * 80LL * 80LL + 1) + e2;
      return {pack, e3};
    }
    case ShiftAlgebra::quadratic_irrational: {
      // Reduce x^2 = r x + s: the difference polynomial c0 + c1 x + c2 x^2
      // (c0 = e3, c1 = e2, c2 = e1) vanishes iff c1 + r c2 and c0 + s c2 do.
      const i128 lin = static_cast<i128>(e2) + static_cast<i128>(m.quad_r) * e1;
      const i128 cst = static_cast<i128>(e3) + static_cast<i128>(m.quad_s) * e1;
      return {narrow_checked(lin, "enumerate_diagonal"),
              narrow_checked(cst, "enumerate_diagonal")};
    }
    case ShiftAlgebra::rational: {
      i128 p;
      const i128 m1 = static_cast<i128>(m.rat_q) * e[0] + m.rat_a;
      const i128 m2 = static_cast<i128>(m.rat_q) * e[1] + m.rat_a;
      const i128 m3 = static_cast<i128>(m.rat_q) * e[2] + m.rat_a;
      if (!checked_mul(m1, m2, p) || !checked_mul(p, m3, p))
        throw std::overflow_error("enumerate_diagonal: coefficient arithmetic overflow");
      return {narrow_checked(p, "enumerate_diagonal"), 0};
    }
  }
  throw std::logic_error("enumerate_diagonal: unreachable shift algebra");
}

}  // namespace

DiagonalShiftModel DiagonalShiftModel::generic() { return {}; }

DiagonalShiftModel DiagonalShiftModel::quadratic(long long r, long long s) {
  DiagonalShiftModel m;
  m.algebra = ShiftAlgebra::quadratic_irrational;
  m.quad_r = r;
  m.quad_s = s;
  return m;
}

DiagonalShiftModel DiagonalShiftModel::rational(long long a, long long q) {
  DiagonalShiftModel m;
  m.algebra = ShiftAlgebra::rational;
  m.rat_a = a;
  m.rat_q = q;
  return m;
}

DiagonalSolutionSet enumerate_diagonal(const DiagonalEquationInstance& instance) {
  validate_instance(instance);
  const int k = instance.k;
  const long long N = instance.n_bound;
  const long long side_count = (k == 2) ? N * N : N * N * N;

  // Keys of all ordered k-tuples in lexicographic order.
  std::vector<KeyPair> keys(static_cast<std::size_t>(side_count));
  {
    long long e[3] = {0, 0, 0};
    long long idx = 0;
    if (k == 2) {
      for (e[0] = 1; e[0] <= N; ++e[0])
        for (e[1] = 1; e[1] <= N; ++e[1])
          keys[static_cast<std::size_t>(idx++)] = side_key(instance.shift, k, e);
    } else {
      for (e[0] = 1; e[0] <= N; ++e[0])
        for (e[1] = 1; e[1] <= N; ++e[1])
          for (e[2] = 1; e[2] <= N; ++e[2])
            keys[static_cast<std::size_t>(idx++)] = side_key(instance.shift, k, e);
    }
  }

  std::unordered_map<KeyPair, std::vector<std::int32_t>, KeyPairHash> buckets;
  buckets.reserve(static_cast<std::size_t>(side_count) * 2);
  for (long long i = 0; i < side_count; ++i)
    buckets[keys[static_cast<std::size_t>(i)]].push_back(static_cast<std::int32_t>(i));

  long long count = 0;
  for (const auto& [key, members] : buckets) {
    const long long c = static_cast<long long>(members.size());
    count += c * c;
  }

  DiagonalSolutionSet out;
  out.k = k;
  out.count = count;
  const long long entries = count * 2 * k;
  if (entries > 200'000'000LL)
    throw std::runtime_error(
        "enumerate_diagonal: solution list would exceed the 2e8-entry memory budget");
  out.flat.reserve(static_cast<std::size_t>(entries));

  auto decode = [&](std::int32_t idx, std::int32_t* dst) {
    long long v = idx;
    if (k == 2) {
      dst[0] = static_cast<std::int32_t>(v / N + 1);
      dst[1] = static_cast<std::int32_t>(v % N + 1);
    } else {
      dst[0] = static_cast<std::int32_t>(v / (N * N) + 1);
      v %= N * N;
      dst[1] = static_cast<std::int32_t>(v / N + 1);
      dst[2] = static_cast<std::int32_t>(v % N + 1);
    }
  };

  std::int32_t row[6];
  for (long long left = 0; left < side_count; ++left) {
    const auto& mates = buckets[keys[static_cast<std::size_t>(left)]];
    decode(static_cast<std::int32_t>(left), row);
    for (const std::int32_t right : mates) {
      decode(right, row + k);
      out.flat.insert(out.flat.end(), row, row + 2 * k);
    }
  }
  return out;
}

OffDiagonalTuple make_offdiagonal_tuple(long long n1, long long n2, long long n3,
                                        long long n4) {
  if (n1 < 0 || n2 < 0 || n3 < 0 || n4 < 0)
    throw std::invalid_argument("make_offdiagonal_tuple: entries must be non-negative");
  const i128 prod_diff = static_cast<i128>(n1) * n2 - static_cast<i128>(n3) * n4;
  OffDiagonalTuple t;
  t.n1 = n1;
  t.n2 = n2;
  t.n3 = n3;
  t.n4 = n4;
  t.h1 = narrow_checked(prod_diff, "make_offdiagonal_tuple");
  t.h2 = n1 + n2 - n3 - n4;
  if (t.h1 == 0 && t.h2 == 0)
    throw std::invalid_argument("make_offdiagonal_tuple: quadruple is diagonal ((h1,h2) = (0,0))");
  return t;
}

std::vector<OffDiagonalTuple> parametrize_offdiagonal(long long h1, long long h2,
                                                      long long n_max) {
  if (h1 == 0 && h2 == 0)
    throw std::invalid_argument("parametrize_offdiagonal: (h1, h2) must not be (0, 0)");
  if (n_max < 1 || n_max > 1'000'000)
    throw std::invalid_argument("parametrize_offdiagonal: n_max must lie in [1, 1e6]");
  if (std::llabs(h1) > 1'000'000'000'000LL)
    throw std::invalid_argument("parametrize_offdiagonal: |h1| must not exceed 1e12");
  if (std::llabs(h2) > 4'000'000LL)
    throw std::invalid_argument("parametrize_offdiagonal: |h2| must not exceed 4e6");

  std::vector<OffDiagonalTuple> out;
  std::vector<long long> divs;
  for (long long n = 1; n <= n_max; ++n) {
    const long long D = n * h2 - h1;
    if (D == 0) continue;  // forces n2 = n3, which the strict orientation rejects
    const long long A = std::llabs(D);
    divs.clear();
    for (long long d = 1; d * d <= A; ++d) {
      if (A % d) continue;
      divs.push_back(d);
      if (d != A / d) divs.push_back(A / d);
    }
    std::sort(divs.begin(), divs.end());
    for (const long long kd : divs) {
      if (kd > n - 1) break;  // n1 = n - kd must stay >= 1
      const long long quot = (D < 0) ? -(A / kd) : (A / kd);
      const long long n4 = n - h2 - kd + quot;
      if (n4 < 1 || n4 > n) continue;
      const long long n2 = h2 + n4 + kd;
      if (n2 < 1 || n2 >= n) continue;  // max(n3,n4) = n must strictly dominate n2
      OffDiagonalTuple t = make_offdiagonal_tuple(n - kd, n2, n, n4);
      if (t.h1 != h1 || t.h2 != h2)
        throw std::logic_error("parametrize_offdiagonal: invariant recomputation mismatch");
      out.push_back(t);
    }
  }
  return out;
}

std::vector<GcdGroup> gcd_refine(const std::vector<OffDiagonalTuple>& tuples,
                                 long long h2) {
  std::map<long long, std::vector<RefinedOffDiagonalTuple>> groups;
  for (const OffDiagonalTuple& t : tuples) {
    if (t.h2 != h2)
      throw std::invalid_argument("gcd_refine: tuple h2 differs from the given h2");
    const long long kd = t.n3 - t.n1;
    if (kd < 1)
      throw std::invalid_argument(
          "gcd_refine: tuple is not in canonical orientation (n3 - n1 < 1)");
    const long long g = (h2 == 0) ? kd : std::gcd(kd, std::llabs(h2));
    if (t.h1 % g != 0)
      throw std::logic_error("gcd_refine: gcd(k, h2) fails to divide h1");
    RefinedOffDiagonalTuple r;
    r.tuple = t;
    r.g = g;
    r.k_reduced = kd / g;
    r.h1_reduced = t.h1 / g;
    r.h2_reduced = h2 / g;
    const long long d_reduced = t.n3 * r.h2_reduced - r.h1_reduced;
    if (d_reduced % r.k_reduced != 0)
      throw std::logic_error("gcd_refine: reduced divisibility failed");
    const long long n_star =
        t.n3 - g * r.k_reduced - g * r.h2_reduced + d_reduced / r.k_reduced;
    if (n_star != t.n4)
      throw std::logic_error("gcd_refine: recomputed n4 disagrees with the stored value");
    groups[g].push_back(r);
  }
  std::vector<GcdGroup> out;
  out.reserve(groups.size());
  for (auto& [g, rows] : groups) out.push_back(GcdGroup{g, std::move(rows)});
  return out;
}

std::vector<OffDiagonalTuple> near_diagonal_filter(
    const std::vector<OffDiagonalTuple>& tuples, const ShiftParameter& alpha,
    double T, double eps, double C) {
  if (!(T >= 100.0))
    throw std::invalid_argument("near_diagonal_filter: requires T >= 100");
  if (!(eps >= 0.0 && eps < 1.0))
    throw std::invalid_argument("near_diagonal_filter: requires 0 <= eps < 1");
  if (!(C > 0.0))
    throw std::invalid_argument("near_diagonal_filter: requires C > 0");
  const double scale = C / std::pow(T, 1.0 - eps);
  const double a = alpha.value;
  std::vector<OffDiagonalTuple> kept;
  for (const OffDiagonalTuple& t : tuples) {
    bool exact_zero = false;
    const double gap = tuple_gap(alpha, t.h1, t.h2, &exact_zero);
    const double bound =
        scale * (static_cast<double>(t.n3) + a) * (static_cast<double>(t.n4) + a);
    if (exact_zero || std::fabs(gap) <= bound) kept.push_back(t);
  }
  return kept;
}

double diagonal_main_term(const ShiftParameter& alpha, double T) {
  if (!(T >= 10.0))
    throw std::invalid_argument("diagonal_main_term: requires T >= 10");
  const double a = alpha.value;
  const double upper = std::floor(T);
  const double inner = digamma(upper + 1.0 + a) - digamma(a);
  return 2.0 * T * inner * inner;
}

OscillatoryTerm oscillatory_term(const OffDiagonalTuple& tuple,
                                 const ShiftParameter& alpha, double t) {
  if (!(t >= 1.0))
    throw std::invalid_argument("oscillatory_term: requires t >= 1");
  bool exact_zero = false;
  const double gap = tuple_gap(alpha, tuple.h1, tuple.h2, &exact_zero);
  if (exact_zero || gap == 0.0)
    throw std::invalid_argument("oscillatory_term: zero gap (diagonal term in disguise)");
  const double a = alpha.value;
  const double prod =
      (static_cast<double>(tuple.n3) + a) * (static_cast<double>(tuple.n4) + a);
  const double phase = t * gap / prod;
  // exp(i*phase) - 1 = 2 i sin(phase/2) exp(i*phase/2): exact identity,
  // cancellation-free for small phases.
  const double half = 0.5 * phase;
  const double sh = std::sin(half);
  const double ch = std::cos(half);
  const std::complex<double> osc(-2.0 * sh * sh, 2.0 * sh * ch);
  double weight = weight_w(t, static_cast<double>(tuple.n1) + a);
  weight *= weight_w(t, static_cast<double>(tuple.n2) + a);
  weight *= weight_w(t, static_cast<double>(tuple.n3) + a);
  weight *= weight_w(t, static_cast<double>(tuple.n4) + a);
  OscillatoryTerm out;
  out.phase = phase;
  out.gap = gap;
  out.weight = weight;
  out.value = (weight / gap) * osc;
  return out;
}

std::complex<double> offdiag_oscillatory_estimate(const ShiftParameter& alpha,
                                                  double T,
                                                  const SmoothWindow& window,
                                                  double eps, double C,
                                                  long long work_budget) {
  if (!(T >= 100.0 && T <= 2e4))
    throw std::invalid_argument("offdiag_oscillatory_estimate: requires 100 <= T <= 2e4");
  if (!(eps >= 0.0 && eps < 1.0))
    throw std::invalid_argument("offdiag_oscillatory_estimate: requires 0 <= eps < 1");
  if (!(C > 0.0))
    throw std::invalid_argument("offdiag_oscillatory_estimate: requires C > 0");
  if (work_budget < 1)
    throw std::invalid_argument("offdiag_oscillatory_estimate: requires a positive budget");
  if (!window.phi)
    throw std::invalid_argument("offdiag_oscillatory_estimate: window.phi is empty");
  if (!alpha.is_rational()) {
    // Diophantine gate: the cancellation argument this estimate models only
    // holds for shifts whose irrationality exponent is close to 2. Use the
    // shift's cached expansion when it carries one (exact for synthetic
    // Liouville shifts); otherwise expand on demand from the dd value.
    double mu;
    if (alpha.cf_cache) {
      mu = irrationality_exponent_estimate(*alpha.cf_cache);
    } else {
      const ContinuedFraction cf = expand_cf(alpha, i128(1) << 100);
      mu = irrationality_exponent_estimate(cf);
    }
    if (!(mu < 3.5))
      throw std::invalid_argument(
          "offdiag_oscillatory_estimate: irrationality exponent estimate " +
          std::to_string(mu) + " is not below 3.5");
  }

  const double t = 1.5 * T;
  // The smoothing weight confines the sums to n_j <= T^(1/2+eps); entries
  // beyond that cutoff carry negligible weight products.
  const long long n_max = std::max<long long>(
      32, static_cast<long long>(std::ceil(std::pow(T, 0.5 + eps))));
  const double a = alpha.value;
  const double bound_cap =
      C * (static_cast<double>(n_max) + 1.0) * (static_cast<double>(n_max) + 1.0) /
      std::pow(T, 1.0 - eps);
  const long long h1_cap = n_max * n_max - 1;
  const long long h2_cap = 2 * n_max;

  auto candidate_range = [&](long long h2, long long& lo, long long& hi) {
    const double center = -static_cast<double>(h2) * a;
    lo = static_cast<long long>(std::ceil(center - bound_cap - 1e-9));
    hi = static_cast<long long>(std::floor(center + bound_cap + 1e-9));
    lo = std::max(lo, -h1_cap);
    hi = std::min(hi, h1_cap);
  };

  // Projected work: candidate pairs times the divisor-scan cost per pair
  // (n_max trial divisions up to sqrt(max |n h2 - h1|) <= sqrt(3) n_max).
  long long pairs = 0;
  for (long long h2 = -h2_cap; h2 <= h2_cap; ++h2) {
    long long lo, hi;
    candidate_range(h2, lo, hi);
    if (hi >= lo) pairs += hi - lo + 1;
  }
  const double projected = static_cast<double>(pairs) * static_cast<double>(n_max) *
                           (std::sqrt(3.0) * static_cast<double>(n_max) + 2.0);
  if (projected > static_cast<double>(work_budget))
    throw std::runtime_error(
        "offdiag_oscillatory_estimate: projected divisor-scan work " +
        std::to_string(projected) + " exceeds the budget " +
        std::to_string(work_budget));

  Kahan acc_re, acc_im;
  for (long long h2 = -h2_cap; h2 <= h2_cap; ++h2) {
    long long lo, hi;
    candidate_range(h2, lo, hi);
    for (long long h1 = lo; h1 <= hi; ++h1) {
      if (h1 == 0 && h2 == 0) continue;
      if (alpha.is_rational()) {
        const i128 num =
            static_cast<i128>(h1) * alpha.rat_q + static_cast<i128>(h2) * alpha.rat_a;
        if (num == 0) continue;  // diagonal class in disguise
      }
      const std::vector<OffDiagonalTuple> tuples =
          parametrize_offdiagonal(h1, h2, n_max);
      if (tuples.empty()) continue;
      const std::vector<OffDiagonalTuple> kept =
          near_diagonal_filter(tuples, alpha, T, eps, C);
      for (const OffDiagonalTuple& tp : kept) {
        const OscillatoryTerm term = oscillatory_term(tp, alpha, t);
        acc_re.add(term.value.real());
        acc_im.add(term.value.imag());
      }
    }
  }
  const double amp = window.phi(t / T);
  return {amp * acc_re.s, amp * acc_im.s};
}

}  // namespace hzlab
