#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "hzlab/special.hpp"

using hzlab::additive_character;
using hzlab::chi_factor;
using hzlab::cplx;
using hzlab::digamma;
using hzlab::gaussian_kernel;
using hzlab::log_gamma;

namespace {
double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}
}  // namespace

TEST_CASE("log_gamma at classical points") {
  CHECK(std::abs(log_gamma(cplx(1.0)) - 0.0) < 1e-14);
  CHECK(rel_err(log_gamma(cplx(5.0)), std::log(24.0)) < 1e-14);
  CHECK(rel_err(log_gamma(cplx(0.5)), 0.57236494292470008707) < 1e-14);
  // Gamma(-2.5) = sqrt(pi)/((-2.5)(-1.5)(-0.5)) reached through the
  // upper-half-plane continuation: exp(log_gamma) must land on it.
  cplx g = std::exp(log_gamma(cplx(-2.5, 0.0)));
  CHECK(std::abs(g.real() - (-0.94530872048294188557)) < 1e-13);
  CHECK(std::abs(g.imag()) < 1e-12);
}

TEST_CASE("log_gamma poles throw") {
  CHECK_THROWS_AS((void)log_gamma(cplx(0.0)), std::domain_error);
  CHECK_THROWS_AS((void)log_gamma(cplx(-3.0)), std::domain_error);
}

TEST_CASE("log_gamma functional identities on the right half-plane") {
  std::mt19937_64 rng(20260816u);
  std::uniform_real_distribution<double> ure(0.05, 40.0);
  std::uniform_real_distribution<double> uim(-50.0, 50.0);
  for (int i = 0; i < 300; ++i) {
    cplx z(ure(rng), uim(rng));
    // Recurrence: log Gamma(z+1) = log Gamma(z) + log z, exactly principal
    // for Re(z) > 0.
    cplx lhs = log_gamma(z + 1.0);
    cplx rhs = log_gamma(z) + std::log(z);
    CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
    // Legendre duplication: log Gamma(2z) = log Gamma(z) + log Gamma(z+1/2)
    //                                      + (2z-1) log 2 - (1/2) log pi.
    cplx dup = log_gamma(z) + log_gamma(z + 0.5) + (2.0 * z - 1.0) * std::log(2.0) -
               0.5 * std::log(M_PI);
    cplx direct = log_gamma(2.0 * z);
    CHECK(std::abs(dup - direct) < 1e-12 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("log_gamma large-argument accuracy via duplication") {
  for (cplx z : {cplx(4900.0, 300.0), cplx(12.3, -4800.0), cplx(3000.0, 3000.0)}) {
    cplx dup = log_gamma(z) + log_gamma(z + 0.5) + (2.0 * z - 1.0) * std::log(2.0) -
               0.5 * std::log(M_PI);
    cplx direct = log_gamma(2.0 * z);
    CHECK(std::abs(dup - direct) < 1e-12 * std::abs(direct));
  }
}

TEST_CASE("log_gamma conjugation symmetry") {
  std::mt19937_64 rng(7u);
  std::uniform_real_distribution<double> ure(-8.3, 30.0);
  std::uniform_real_distribution<double> uim(0.01, 100.0);
  for (int i = 0; i < 100; ++i) {
    cplx z(ure(rng), uim(rng));
    cplx a = log_gamma(std::conj(z));
    cplx b = std::conj(log_gamma(z));
    CHECK(std::abs(a - b) == 0.0);  // implemented via the same path
  }
}

TEST_CASE("chi_factor special values") {
  CHECK(rel_err(chi_factor(cplx(0.5)), 1.0) < 1e-13);
  // chi(-1) = pi^(-3/2) Gamma(1)/Gamma(-1/2) = -1/(2 pi^2); this value is
  // what makes chi consistent with zeta(s) = chi(s) zeta(1-s) at s = -1.
  CHECK(rel_err(chi_factor(cplx(-1.0)), -1.0 / (2.0 * M_PI * M_PI)) < 1e-12);
}

TEST_CASE("chi_factor modulus one on the critical line") {
  std::mt19937_64 rng(42u);
  std::uniform_real_distribution<double> ut(1.0, 1e5);
  for (int i = 0; i < 100; ++i) {
    double t = ut(rng);
    double m = std::abs(chi_factor(cplx(0.5, t)));
    CHECK(std::abs(m - 1.0) < 1e-9);
  }
}

TEST_CASE("chi_factor reflection chi(s) chi(1-s) = 1") {
  std::mt19937_64 rng(43u);
  std::uniform_real_distribution<double> ure(-3.0, 4.0);
  std::uniform_real_distribution<double> uim(0.1, 20.0);
  for (int i = 0; i < 100; ++i) {
    cplx s(ure(rng), uim(rng));
    cplx prod = chi_factor(s) * chi_factor(1.0 - s);
    CHECK(std::abs(prod - 1.0) < 1e-9);
  }
  // A pinned point from the sampled family: s = 0.3 + 7i.
  cplx s(0.3, 7.0);
  CHECK(std::abs(chi_factor(s) * chi_factor(1.0 - s) - 1.0) < 1e-10);
}

TEST_CASE("chi_factor poles throw") {
  CHECK_THROWS_AS((void)chi_factor(cplx(1.0)), std::domain_error);
  CHECK_THROWS_AS((void)chi_factor(cplx(3.0)), std::domain_error);
  CHECK_THROWS_AS((void)chi_factor(cplx(0.0)), std::domain_error);
  CHECK_THROWS_AS((void)chi_factor(cplx(-2.0)), std::domain_error);
}

TEST_CASE("gaussian kernel values and symmetries") {
  CHECK(gaussian_kernel(cplx(0.0)) == cplx(1.0));
  CHECK(rel_err(gaussian_kernel(cplx(0.0, 2.0)), std::exp(-4.0)) < 1e-15);
  std::mt19937_64 rng(11u);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    cplx z(u(rng), u(rng));
    CHECK(gaussian_kernel(z) == gaussian_kernel(-z));  // evenness, exact
    CHECK(gaussian_kernel(std::conj(z)) == std::conj(gaussian_kernel(z)));
  }
}

TEST_CASE("additive character") {
  CHECK(std::abs(additive_character(0.0) - cplx(1.0)) == 0.0);
  CHECK(std::abs(additive_character(0.5) - cplx(-1.0)) < 1e-12);
  CHECK(std::abs(additive_character(0.25) - cplx(0.0, 1.0)) < 1e-12);
  std::mt19937_64 rng(12u);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    double x = u(rng);
    CHECK(std::abs(additive_character(x + 1.0) - additive_character(x)) < 1e-12);
    CHECK(std::abs(std::abs(additive_character(x)) - 1.0) < 1e-15);
  }
}

TEST_CASE("digamma classical values") {
  CHECK(std::abs(digamma(1.0) + hzlab::kEulerGamma) < 1e-13);
  CHECK(std::abs(digamma(2.0) - (1.0 - hzlab::kEulerGamma)) < 1e-13);
  CHECK(std::abs(digamma(0.5) - (-hzlab::kEulerGamma - 2.0 * std::log(2.0))) < 1e-13);
  CHECK_THROWS_AS((void)digamma(0.0), std::domain_error);
  // Recurrence psi(x+1) = psi(x) + 1/x on scattered points.
  for (double x : {0.1, 0.37, 1.9, 7.3, 55.0}) {
    CHECK(std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) < 1e-13);
  }
}
