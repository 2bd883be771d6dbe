#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "hzlab/diophantine.hpp"
#include "hzlab/special.hpp"

using namespace hzlab;

namespace {

// Reference bilinear sum by direct double loop with long-double phase
// reduction: Σ_{h<=x} Σ_{k<=y} e(-alpha d h k).
cplx brute_bilinear(long double alpha, long long d, long long x, long long y) {
  cplx s = 0.0;
  for (long long h = 1; h <= x; ++h)
    for (long long k = 1; k <= y; ++k) {
      long double ph = alpha * static_cast<long double>(d) * h * k;
      ph -= floorl(ph);
      s += additive_character(-static_cast<double>(ph));
    }
  return s;
}

long double brute_distance_sum(long double alpha, long long N, long double eta) {
  long double s = 0.0;
  for (long long h = 1; h <= N; ++h) {
    long double f = alpha * h;
    f -= floorl(f);
    long double dist = f <= 0.5L ? f : 1.0L - f;
    s += powl(dist, -eta);
  }
  return s;
}

}  // namespace

TEST_CASE("golden shift expands to the all-ones continued fraction with Fibonacci denominators") {
  auto alpha = shift_golden();
  CHECK(alpha.value == doctest::Approx(0.61803398874989484820).epsilon(1e-15));
  auto cf = expand_cf(alpha, i128(1) << 120);
  REQUIRE(cf.size() >= 60);  // dd precision supports ~75 Fibonacci levels
  CHECK(cf.a[0] == 0);
  for (size_t k = 1; k < cf.size(); ++k) CHECK(cf.a[k] == 1);
  // q: 1, 1, 2, 3, 5, 8, ... (Fibonacci)
  long long fib[11] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
  for (int k = 0; k < 11; ++k) CHECK(cf.q[k] == fib[k]);
  CHECK(cf.precision_exhausted);
  CHECK_FALSE(cf.overflow_truncated);
}

TEST_CASE("sqrt(2)-1 expands to the all-twos continued fraction") {
  auto cf = expand_cf(shift_sqrt2m1(), i128(1) << 120);
  REQUIRE(cf.size() >= 30);
  CHECK(cf.a[0] == 0);
  for (size_t k = 1; k < cf.size(); ++k) CHECK(cf.a[k] == 2);
  CHECK(cf.q[1] == 2);
  CHECK(cf.q[2] == 5);
  CHECK(cf.q[3] == 12);
  CHECK(cf.q[4] == 29);
}

TEST_CASE("rational shifts terminate exactly at the reduced fraction") {
  auto cf = expand_cf(shift_rational(3, 8), i128(1) << 120);
  REQUIRE(cf.size() == 4);
  CHECK(cf.a[0] == 0);
  CHECK(cf.a[1] == 2);
  CHECK(cf.a[2] == 1);
  CHECK(cf.a[3] == 2);
  CHECK(cf.p.back() == 3);
  CHECK(cf.q.back() == 8);
  CHECK_FALSE(cf.precision_exhausted);
  CHECK_FALSE(cf.overflow_truncated);

  auto cf66 = expand_cf(shift_rational(6, 16), i128(1) << 120);  // reduces to 3/8
  CHECK(cf66.p.back() == 3);
  CHECK(cf66.q.back() == 8);

  auto one = expand_cf(shift_one(), i128(1) << 120);
  REQUIRE(one.size() == 1);
  CHECK(one.a[0] == 1);
  CHECK(one.p[0] == 1);
  CHECK(one.q[0] == 1);
}

TEST_CASE("convergent recursion invariants: determinant, quotient bound, bracketing") {
  for (auto alpha : {shift_golden(), shift_sqrt2m1(), shift_liouville(3.0, 10)}) {
    CAPTURE(alpha.tag);
    auto cf = expand_cf(alpha, i128(1) << 120);
    REQUIRE(cf.size() >= 5);
    for (size_t k = 0; k + 1 < cf.size(); ++k) {
      // p_{k+1} q_k - p_k q_{k+1} = (-1)^k, checked exactly in wraparound
      // arithmetic (the true value is +-1, so the mod-2^128 residue decides).
      unsigned __int128 det = static_cast<unsigned __int128>(cf.p[k + 1]) * static_cast<unsigned __int128>(cf.q[k]) -
                              static_cast<unsigned __int128>(cf.p[k]) * static_cast<unsigned __int128>(cf.q[k + 1]);
      if (k % 2 == 0)
        CHECK(det == 1);
      else
        CHECK(det == ~static_cast<unsigned __int128>(0));
      // a_{k+1} <= q_{k+1}/q_k
      CHECK(cf.a[k + 1] * cf.q[k] <= cf.q[k + 1]);
      // 1/(2 q_k q_{k+1}) < |alpha - p_k/q_k| < 1/(q_k q_{k+1}), while the
      // error stays far above dd resolution.
      if (cf.q[k + 1] <= (i128)1000000000000LL) {
        dd err = dd_abs(dd_sub(alpha.value_dd, dd_div(i128_to_dd(cf.p[k]), i128_to_dd(cf.q[k]))));
        dd qq = dd_mul(i128_to_dd(cf.q[k]), i128_to_dd(cf.q[k + 1]));
        dd upper = dd_div(dd(1.0), qq);
        dd lower = dd_mul(upper, 0.5);
        CHECK(dd_lt(lower, err));
        CHECK(dd_lt(err, upper));
      }
    }
  }
}

TEST_CASE("plain-double expansion stops at the precision guard") {
  auto cf = expand_cf(0.1, i128(1) << 120);
  // The double nearest 1/10 sits just above it, so its honest expansion is
  // [0; 9, 1, ...] and 1/10 appears as the second convergent.
  REQUIRE(cf.size() >= 3);
  CHECK(cf.a[0] == 0);
  CHECK(cf.a[1] == 9);
  CHECK(cf.p[2] == 1);
  CHECK(cf.q[2] == 10);
  CHECK(cf.precision_exhausted);
  CHECK_THROWS_AS(expand_cf(1.5, i128(1) << 120), std::invalid_argument);
  CHECK_THROWS_AS(expand_cf(0.0, i128(1) << 120), std::invalid_argument);
}

TEST_CASE("max_q truncates stored convergents") {
  auto cf = expand_cf(shift_golden(), i128(100));
  REQUIRE(cf.size() >= 3);
  CHECK(cf.q.back() <= 100);
  CHECK(cf.q.back() == 89);
}

TEST_CASE("liouville-type constructions control the convergent growth") {
  auto g3 = shift_liouville(3.0, 10);
  auto cf3 = expand_cf(g3, i128(1) << 120);
  REQUIRE(cf3.size() == 6);  // q: 1, 1, 2, 17, 83523, ~4.9e19, then overflow
  CHECK(cf3.q[3] == 17);
  CHECK(cf3.q[4] == 83523);
  CHECK(cf3.overflow_truncated);
  CHECK(static_cast<double>(i128_to_dd(cf3.q[5])) == doctest::Approx(4.87e19).epsilon(0.01));

  // growth exponent 2 degenerates to the all-ones tail: the value is golden.
  auto g2 = shift_liouville(2.0, 12);
  dd diff = dd_abs(dd_sub(g2.value_dd, shift_golden().value_dd));
  CHECK(std::abs(static_cast<double>(diff)) < 1e-20);

  CHECK_THROWS_AS(shift_liouville(1.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(shift_liouville(3.0, 2), std::invalid_argument);
}

TEST_CASE("irrationality exponent estimates match the construction targets") {
  auto mu_golden = irrationality_exponent_estimate(expand_cf(shift_golden(), i128(1) << 120));
  CHECK(mu_golden == doctest::Approx(2.0).epsilon(0.025));

  auto mu_sqrt2 = irrationality_exponent_estimate(expand_cf(shift_sqrt2m1(), i128(1) << 120));
  CHECK(mu_sqrt2 == doctest::Approx(2.0).epsilon(0.025));

  auto mu_g3 = irrationality_exponent_estimate(expand_cf(shift_liouville(3.0, 10), i128(1) << 120));
  CHECK(mu_g3 >= 2.8);
  CHECK(mu_g3 == doctest::Approx(5.0).epsilon(0.01));

  auto mu_g83 = irrationality_exponent_estimate(expand_cf(shift_liouville(8.0 / 3.0, 10), i128(1) << 120));
  CHECK(mu_g83 >= 3.5);
  CHECK(mu_g83 == doctest::Approx(4.0).epsilon(0.01));

  // All denominators of 3/8 are <= 10: no admissible pair.
  CHECK_THROWS_AS(irrationality_exponent_estimate(expand_cf(shift_rational(3, 8), i128(1) << 120)),
                  std::runtime_error);
}

TEST_CASE("growth check separates bounded-type from liouville-type shifts") {
  auto golden_cf = expand_cf(shift_golden(), i128(1) << 120);
  CHECK(growth_check(golden_cf, 0.5));
  auto s2_cf = expand_cf(shift_sqrt2m1(), i128(1) << 120);
  CHECK(growth_check(s2_cf, 0.9));
  auto g3_cf = expand_cf(shift_liouville(3.0, 10), i128(1) << 120);
  CHECK_FALSE(growth_check(g3_cf, 0.1));
  CHECK_FALSE(growth_check(g3_cf, 0.5));
  auto g4_cf = expand_cf(shift_liouville(4.0, 10), i128(1) << 120);
  CHECK_FALSE(growth_check(g4_cf, 0.5));
  CHECK_THROWS_AS(growth_check(golden_cf, 0.0), std::invalid_argument);
}

TEST_CASE("nearest integer distance") {
  CHECK(nearest_int_dist(2.3) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(nearest_int_dist(-0.1) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(nearest_int_dist(0.5) == 0.5);
  CHECK(nearest_int_dist(7.0) == 0.0);
  CHECK_THROWS_AS(nearest_int_dist(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("distance power sum matches a direct reference and its basic bounds") {
  auto s2 = shift_sqrt2m1();
  auto r = distance_power_sum(s2, 10, 1.0);
  long double ref = brute_distance_sum(sqrtl(2.0L) - 1.0L, 10, 1.0L);
  CHECK(r.value == doctest::Approx(static_cast<double>(ref)).epsilon(1e-9));
  CHECK(r.alpha_tag == "sqrt2m1");
  CHECK(r.N == 10);

  // Single term: ||alpha||^(-eta), and golden > 1/2 so ||golden|| = 1 - golden.
  auto one_term = distance_power_sum(shift_golden(), 1, 0.5);
  CHECK(one_term.value == doctest::Approx(std::pow(1.0 - shift_golden().value, -0.5)).epsilon(1e-12));

  // Every term exceeds 1, so the sum dominates N; it grows with N and eta.
  auto a = distance_power_sum(s2, 100, 0.5);
  auto b = distance_power_sum(s2, 200, 0.5);
  auto c = distance_power_sum(s2, 200, 0.9);
  CHECK(a.value > 100.0);
  CHECK(b.value > a.value);
  CHECK(c.value > b.value);

  CHECK_THROWS_AS(distance_power_sum(shift_rational(1, 3), 10, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(distance_power_sum(s2, 10, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(distance_power_sum(s2, 0, 0.5), std::invalid_argument);
}

TEST_CASE("golden-shift distance sum scales linearly at the 1/2 exponent") {
  auto g = shift_golden();
  double r3 = distance_power_sum(g, 1000, 0.5).value / 1000.0;
  double r4 = distance_power_sum(g, 10000, 0.5).value / 10000.0;
  CHECK(r3 > 1.0);
  CHECK(r3 < 5.0);
  CHECK(r4 / r3 > 0.5);
  CHECK(r4 / r3 < 2.0);
}

TEST_CASE("bilinear sum equals the direct double loop") {
  auto s2 = shift_sqrt2m1();
  long double a_ld = sqrtl(2.0L) - 1.0L;

  auto small = bilinear_exp_sum(s2, 1, 3, 3);
  auto small_ref = brute_bilinear(a_ld, 1, 3, 3);
  CHECK(std::abs(small - small_ref) < 1e-10);

  for (auto [d, x, y] : {std::tuple<long long, long long, long long>{1, 157, 193},
                         {3, 200, 111},
                         {2, 89, 200}}) {
    CAPTURE(d);
    auto fast = bilinear_exp_sum(s2, d, x, y);
    auto ref = brute_bilinear(a_ld, d, x, y);
    CHECK(std::abs(fast - ref) < 1e-6);
  }

  // Rational with gamma = 0 at every h: alpha = 1/2, d = 2 collapses the
  // character and the sum counts all lattice points.
  auto collapsed = bilinear_exp_sum(shift_rational(1, 2), 2, 37, 53);
  CHECK(collapsed.real() == doctest::Approx(37.0 * 53.0).epsilon(1e-14));
  CHECK(std::abs(collapsed.imag()) < 1e-12);

  // Rational path matches the direct loop too.
  auto rat = bilinear_exp_sum(shift_rational(3, 8), 1, 50, 60);
  auto rat_ref = brute_bilinear(3.0L / 8.0L, 1, 50, 60);
  CHECK(std::abs(rat - rat_ref) < 1e-8);

  CHECK_THROWS_AS(bilinear_exp_sum(s2, 0, 10, 10), std::invalid_argument);
  CHECK_THROWS_AS(bilinear_exp_sum(s2, 1, 0, 10), std::invalid_argument);
}

TEST_CASE("bilinear sum is additive over full rational periods") {
  auto r38 = shift_rational(3, 8);
  for (long long y : {7LL, 40LL}) {
    auto sx = bilinear_exp_sum(r38, 1, 13, y);
    auto sq = bilinear_exp_sum(r38, 1, 8, y);
    auto sxq = bilinear_exp_sum(r38, 1, 13 + 8, y);
    CHECK(std::abs(sxq - (sx + sq)) < 1e-9);
  }
}

TEST_CASE("shift parsing covers presets, rationals, liouville specs and decimals") {
  CHECK(parse_shift("golden").tag == "golden");
  CHECK(parse_shift("sqrt2m1").tag == "sqrt2m1");
  CHECK(parse_shift("1").tag == "1");
  auto r = parse_shift("rational:3/8");
  CHECK(r.is_rational());
  CHECK(r.rat_a == 3);
  CHECK(r.rat_q == 8);
  auto l = parse_shift("liouville:3,10");
  CHECK_FALSE(l.is_rational());
  CHECK(l.cf_cache != nullptr);
  auto d = parse_shift("0.25");
  CHECK(d.is_rational());
  CHECK(d.rat_a == 1);
  CHECK(d.rat_q == 4);
  auto d2 = parse_shift("0.37");
  CHECK(d2.rat_a == 37);
  CHECK(d2.rat_q == 100);
  CHECK_THROWS_AS(parse_shift("rational:5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_shift("nonsense"), std::invalid_argument);
  CHECK_THROWS_AS(parse_shift("1.25"), std::invalid_argument);
  CHECK_THROWS_AS(parse_shift("rational:0/4"), std::invalid_argument);
}
