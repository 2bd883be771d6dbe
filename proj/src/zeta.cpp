#include "hzlab/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hzlab/fastmath.hpp"
#include "hzlab/special.hpp"

namespace hzlab {

namespace {

constexpr double kEps = 1.1e-16;

// Bernoulli numbers over factorials: B_{2j}/(2j)! for j = 1..6.
constexpr double kBernOverFact[6] = {
    8.3333333333333333e-02,   // B2/2!  = 1/12
    -1.3888888888888889e-03,  // B4/4!  = -1/720
    3.3068783068783069e-05,   // B6/6!  = 1/30240
    -8.2671957671957672e-07,  // B8/8!  = -1/1209600
    2.0876756987868099e-08,   // B10/10!
    -5.2841901386874931e-10,  // B12/12!
};
constexpr double kB14OverFact = 1.3382863930136607e-11;  // (7/6)/14!

struct KahanC {
  double s = 0.0, c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

// e^{-i(phase mod 2pi)} with the phase carried in dd: used when plain-double
// phase rounding t*log(x)*eps would exceed the requested tolerance.
cplx unit_phase_dd(dd phase) {
  static const dd kInvTwoPi = dd_div(dd(1.0), kDDTwoPi);
  double ang = static_cast<double>(dd_frac(dd_mul(phase, kInvTwoPi))) * 6.283185307179586477;
  return {std::cos(ang), -std::sin(ang)};
}

// Upper estimate for the Euler–Maclaurin remainder after the B12 term.
double em_tail_estimate(cplx s, double x) {
  double poch = 1.0;
  for (int j = 0; j <= 12; ++j) poch *= std::abs(s + static_cast<double>(j));
  return 2.0 * kB14OverFact * poch * std::pow(x, -s.real() - 12.0);
}

// Bernoulli-corrected tail of the Euler–Maclaurin formula beyond N terms:
// x^{1-s}/(s-1) + x^{-s}/2 + sum_j B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1},
// given x = N + alpha and pw = x^{-s}.
cplx em_tail(cplx s, double x, cplx pw, int levels = 6) {
  cplx tail = pw * x / (s - 1.0) + 0.5 * pw;
  cplx poch = s;
  cplx xm = pw / x;
  double inv_x2 = 1.0 / (x * x);
  for (int j = 1; j <= levels; ++j) {
    tail += kBernOverFact[j - 1] * poch * xm;
    poch *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
    xm *= inv_x2;
  }
  return tail;
}

double clampd(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

// Weighted-tail integral of the AFE beyond the relative cutoff Xi = e^L:
// integral_{Xi}^{inf} W(u) u^{-1/2} du = e^{1/4} erfc((L-1)/2) - e^{L/2} erfc(L/2).
double afe_tail_integral(double L) {
  return 1.2840254166877414841 * std::erfc(0.5 * (L - 1.0)) -
         std::exp(0.5 * L) * std::erfc(0.5 * L);
}

}  // namespace

double smoothing_weight(double xi) {
  if (!(xi > 0.0)) throw std::invalid_argument("smoothing_weight: xi must be positive");
  return 0.5 * std::erfc(0.5 * std::log(xi));
}

cplx smoothing_weight_contour(double xi, const WeightProfile& profile) {
  if (!(xi > 0.0)) throw std::invalid_argument("smoothing_weight_contour: xi must be positive");
  const double c = profile.contour_abscissa;
  const double H = profile.contour_half_height;
  const double du = profile.contour_step;
  if (!(c > 0.0) || !(H > 1.0) || !(du > 0.0) || du > 1.0)
    throw std::invalid_argument("smoothing_weight_contour: bad contour parameters");
  const double L = std::log(xi);
  const long long steps = static_cast<long long>(std::ceil(2.0 * H / du));
  KahanC re, im;
  for (long long k = 0; k <= steps; ++k) {
    double u = -H + du * static_cast<double>(k);
    double w = (k == 0 || k == steps) ? 0.5 : 1.0;  // trapezoid ends
    double mag = std::exp(c * c - u * u - c * L);
    double theta = u * (2.0 * c - L);
    cplx numer = mag * cplx(std::cos(theta), std::sin(theta));
    cplx val = numer / cplx(c, u);
    re.add(w * val.real());
    im.add(w * val.imag());
  }
  double scale = du / 6.2831853071795864769;
  return {re.s * scale, im.s * scale};
}

double weight_w(double t, double x, const WeightProfile&) {
  if (!(t >= 1.0)) throw std::invalid_argument("weight_w: t >= 1 required");
  if (!(x > 0.0)) throw std::invalid_argument("weight_w: x > 0 required");
  return smoothing_weight(x / std::sqrt(t / 6.2831853071795864769));
}

cplx hurwitz_zeta_em(cplx s, double alpha, double tol) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw std::invalid_argument("hurwitz_zeta_em: alpha must lie in (0, 1]");
  if (s == cplx(1.0, 0.0)) throw std::domain_error("hurwitz_zeta_em: pole at s = 1");
  if (!(tol >= 1e-13)) throw std::invalid_argument("hurwitz_zeta_em: tol >= 1e-13 required");
  const double sigma = s.real(), t = s.imag();
  if (std::abs(t) > 1e6) throw std::invalid_argument("hurwitz_zeta_em: |Im s| <= 1e6 required");
  if (sigma <= -10.5)
    throw std::domain_error("hurwitz_zeta_em: Re(s) <= -10.5 is outside the B12 continuation range");

  long long N = std::max<long long>(50, static_cast<long long>(std::ceil(2.0 * std::abs(t))));
  while (em_tail_estimate(s, static_cast<double>(N) + alpha) > 0.25 * tol) {
    N *= 2;
    if (N > 8000000)
      throw std::runtime_error("hurwitz_zeta_em: term budget exceeded before reaching tol");
  }

  const bool dd_phases = std::abs(t) * std::log(static_cast<double>(N) + 2.0) * kEps > 0.25 * tol;
  KahanC re, im;
  for (long long n = 0; n < N; ++n) {
    double x = static_cast<double>(n) + alpha;
    double lx = std::log(x);
    double amp = std::exp(-sigma * lx);
    cplx ph;
    if (dd_phases) {
      ph = unit_phase_dd(dd_mul(dd_log(dd(x)), t));
    } else {
      double r = reduce_two_pi(t * lx);
      ph = {std::cos(r), -std::sin(r)};
    }
    re.add(amp * ph.real());
    im.add(amp * ph.imag());
  }
  double x = static_cast<double>(N) + alpha;
  double lx = std::log(x);
  cplx phN = dd_phases ? unit_phase_dd(dd_mul(dd_log(dd(x)), t))
                       : cplx(std::cos(reduce_two_pi(t * lx)), -std::sin(reduce_two_pi(t * lx)));
  cplx pw = std::exp(-sigma * lx) * phN;
  cplx tail = em_tail(s, x, pw);
  return cplx(re.s, im.s) + tail;
}

AfeResult hurwitz_afe(double t, const ShiftParameter& alpha, const WeightProfile& profile) {
  if (!(t >= 10.0)) throw std::invalid_argument("hurwitz_afe: t >= 10 required");
  const double tau = std::sqrt(t / 6.2831853071795864769);
  const double eps = clampd(profile.tail_factor / std::sqrt(t), 1e-10, 1e-2);
  // Solve sqrt(tau) * tail_integral(L) = eps/2 for the relative cutoff.
  const double target = 0.5 * eps / std::sqrt(tau);
  double lo = 1.2, hi = 16.0;
  if (afe_tail_integral(lo) <= target) {
    hi = lo;
  } else {
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      (afe_tail_integral(mid) > target ? lo : hi) = mid;
    }
  }
  const double xi_cut = std::exp(hi);
  const double X = xi_cut * tau;
  const double inv_tau = 1.0 / tau;

  AfeResult out;
  out.tau = tau;
  out.cutoff = xi_cut;

  KahanC mre, mim;
  for (long long m = 0;; ++m) {
    double x = static_cast<double>(m) + alpha.value;
    if (x > X) break;
    double w = smoothing_weight(x * inv_tau);
    double amp = w / std::sqrt(x);
    double r = reduce_two_pi(t * std::log(x));
    double cs, sn;
    sincos_reduced(r, sn, cs);
    mre.add(amp * cs);
    mim.add(-amp * sn);
    ++out.main_terms;
  }

  KahanC dre, dim;
  for (long long n = 1; static_cast<double>(n) <= X; ++n) {
    double x = static_cast<double>(n);
    double w = smoothing_weight(x * inv_tau);
    double amp = w / std::sqrt(x);
    // e(-n alpha) e^{i t log n}: combine the two unit phases.
    double r = reduce_two_pi(t * std::log(x));
    double cs, sn;
    sincos_reduced(r, sn, cs);
    double frac = static_cast<double>(dd_frac(dd_mul(alpha.value_dd, static_cast<double>(n))));
    double a2 = -6.2831853071795864769 * frac;
    double c2 = std::cos(a2), s2 = std::sin(a2);
    dre.add(amp * (cs * c2 - sn * s2));
    dim.add(amp * (sn * c2 + cs * s2));
    ++out.dual_terms;
  }

  cplx chi = chi_factor(cplx(0.5, t));
  out.value = cplx(mre.s, mim.s) + chi * cplx(dre.s, dim.s);
  return out;
}

cplx periodic_zeta(cplx s, double lambda, double tol) {
  const double sigma = s.real(), t = s.imag();
  if (!(sigma > 0.0)) throw std::domain_error("periodic_zeta: Re(s) > 0 required");
  if (std::abs(t) > 1e6) throw std::invalid_argument("periodic_zeta: |Im s| <= 1e6 required");
  if (!(tol >= 1e-13)) tol = 1e-13;
  double lf = lambda - std::floor(lambda);
  if (lf == 0.0) {
    if (sigma > 1.0) return hurwitz_zeta_em(s, 1.0, tol);
    throw std::domain_error("periodic_zeta: integer phase diverges for Re(s) <= 1");
  }

  const cplx e_lambda = additive_character(lf);
  const cplx a_prime = 1.0 / (e_lambda - 1.0);
  const cplx big_a = e_lambda * a_prime;
  const double mag_a = std::abs(big_a);
  const double smag = std::abs(s);

  // Adaptive cut length M and summation order r: predicted truncation
  // |A|^r |(s)_r| M^{1-sigma-r}/(sigma+r-1) plus difference-pyramid roundoff.
  long long best_m = 0;
  int best_r = 0;
  double best_pred = 1e300;
  const long long m_levels[4] = {
      static_cast<long long>(std::ceil(3.0 * smag)) + 50,
      static_cast<long long>(std::ceil(10.0 * (smag + 20.0))),
      static_cast<long long>(std::ceil(30.0 * (smag + 20.0))),
      static_cast<long long>(std::ceil(100.0 * (smag + 20.0)))};
  for (long long M : m_levels) {
    double poch = 1.0;
    double a_pow = 1.0;
    for (int r = 1; r <= 14; ++r) {
      poch *= smag + static_cast<double>(r - 1);
      a_pow *= mag_a;
      if (r < 2) continue;
      double bound = a_pow * poch * std::pow(static_cast<double>(M), 1.0 - sigma - r) /
                     (sigma + r - 1.0);
      double round = kEps * (std::pow(static_cast<double>(M), std::max(1.0 - sigma, 0.0)) +
                             std::pow(2.0 * std::max(mag_a, 1.0), r) *
                                 std::pow(static_cast<double>(M) + 1.0, -sigma) * (r + 1));
      double pred = bound + round;
      if (pred < best_pred) {
        best_pred = pred;
        best_m = M;
        best_r = r;
      }
    }
    if (best_pred <= 0.5 * tol) break;
  }
  if (best_pred > std::max(tol, 1e-6))
    throw std::runtime_error("periodic_zeta: phase too close to an integer to resolve");

  const long long M = best_m;
  const int r = best_r;
  const bool dd_phases =
      std::abs(t) * std::log(static_cast<double>(M + r) + 2.0) * kEps > 0.1 * tol;
  const dd lf_dd(lf);

  auto char_phase = [&](double n) -> cplx {
    double ang = 6.2831853071795864769 * static_cast<double>(dd_frac(dd_mul(lf_dd, n)));
    return {std::cos(ang), std::sin(ang)};
  };
  auto power_term = [&](double n) -> cplx {  // n^{-s}
    cplx log_ph;
    if (dd_phases) {
      log_ph = unit_phase_dd(dd_mul(dd_log(dd(n)), t));
    } else {
      double rr = reduce_two_pi(t * std::log(n));
      log_ph = {std::cos(rr), -std::sin(rr)};
    }
    return std::exp(-sigma * std::log(n)) * log_ph;
  };

  KahanC re, im;
  for (long long n = 1; n <= M; ++n) {
    double x = static_cast<double>(n);
    cplx v = char_phase(x) * power_term(x);
    re.add(v.real());
    im.add(v.imag());
  }

  // Difference pyramid for (Delta^j f)(M+1), f(n) = n^{-s}.
  std::vector<cplx> f(r);
  for (int i = 0; i < r; ++i) f[i] = power_term(static_cast<double>(M + 1 + i));
  std::vector<cplx> deltas(r);
  for (int j = 0; j < r; ++j) {
    deltas[j] = f[0];
    for (int i = 0; i + j + 1 < r; ++i) f[i] = f[i + 1] - f[i];
  }
  cplx e_m1 = char_phase(static_cast<double>(M + 1));
  cplx corr = 0.0, apow = 1.0;
  for (int j = 0; j < r; ++j) {
    corr += apow * deltas[j];
    apow *= -big_a;
  }
  corr *= -a_prime * e_m1;
  return cplx(re.s, im.s) + corr;
}

namespace {
// P(s, lambda) with integer phases taken in the continued sense (they reduce
// to zeta(s)); the identity-residual diagnostics compare continued functions.
cplx periodic_zeta_continued(cplx s, double lambda, double tol) {
  if (lambda == std::floor(lambda)) return hurwitz_zeta_em(s, 1.0, std::max(tol, 1e-13));
  return periodic_zeta(s, lambda, tol);
}
}  // namespace

double functional_equation_residual(cplx z, const ShiftParameter& alpha) {
  cplx cz = std::cos(1.5707963267948966192 * z);
  if (std::abs(cz) < 1e-8)
    throw std::domain_error("functional_equation_residual: cos(pi z/2) vanishes");
  cplx lhs = hurwitz_zeta_em(1.0 - z, alpha.value);
  cplx rot = std::exp(cplx(0.0, -1.5707963267948966192) * z);
  cplx p_plus = periodic_zeta_continued(z, alpha.value, 1e-10);
  cplx p_minus = periodic_zeta_continued(z, -alpha.value, 1e-10);
  cplx rhs = chi_factor(1.0 - z) / (2.0 * cz) * (rot * p_plus + p_minus / rot);
  return std::abs(lhs - rhs);
}

double chi_p_identity_residual(double t, const ShiftParameter& alpha) {
  if (!(t >= 10.0)) throw std::invalid_argument("chi_p_identity_residual: t >= 10 required");
  cplx s(0.5, t);
  cplx lhs = hurwitz_zeta_em(s, alpha.value);
  cplx rhs = chi_factor(s) * periodic_zeta_continued(cplx(0.5, -t), -alpha.value, 1e-10);
  return std::abs(lhs - rhs);
}

cplx zeta_critical(double t, const ShiftParameter& alpha, const EvalPolicy& policy) {
  if (!(t >= 0.0)) throw std::invalid_argument("zeta_critical: t >= 0 required");
  if (t <= policy.method_tie_t) return hurwitz_zeta_em(cplx(0.5, t), alpha.value);
  return hurwitz_afe(t, alpha, policy.profile).value;
}

std::vector<cplx> zeta_critical_grid(const ShiftParameter& alpha, double t0, double h,
                                     long long n) {
  if (!(t0 >= 0.0) || !(h > 0.0) || n < 1 || n > (1LL << 31))
    throw std::invalid_argument("zeta_critical_grid: bad grid");
  const double t_end = t0 + h * static_cast<double>(n - 1);
  if (t_end > 1e6) throw std::invalid_argument("zeta_critical_grid: grid extends past t = 1e6");
  const double a = alpha.value;
  const long long n_max = std::max<long long>(64, static_cast<long long>(std::ceil(t_end)) + 50);

  std::vector<double> lntab(n_max), rtab(n_max);
  for (long long i = 0; i < n_max; ++i) {
    double x = static_cast<double>(i) + a;
    lntab[i] = std::log(x);
    rtab[i] = 1.0 / std::sqrt(x);
  }

  std::vector<cplx> out(static_cast<size_t>(n));
  constexpr long long kBlock = 4096;
  std::vector<double> accr(kBlock), acci(kBlock);

  for (long long j0 = 0; j0 < n; j0 += kBlock) {
    const long long jb = std::min(kBlock, n - j0);
    const double tb0 = t0 + h * static_cast<double>(j0);
    const double tb_end = t0 + h * static_cast<double>(j0 + jb - 1);
    const long long nb = std::max<long long>(64, static_cast<long long>(std::ceil(tb_end)) + 50);
    std::fill(accr.begin(), accr.begin() + jb, 0.0);
    std::fill(acci.begin(), acci.begin() + jb, 0.0);

    long long m0 = 0;
    for (; m0 + 8 <= nb; m0 += 8) {
      double cr[8], ci[8], wr[8], wi[8];
      for (int l = 0; l < 8; ++l) {
        const double L = lntab[m0 + l];
        double sn, cs;
        sincos_reduced(reduce_two_pi(tb0 * L), sn, cs);
        const double r = rtab[m0 + l];
        cr[l] = r * cs;
        ci[l] = -r * sn;
        sincos_reduced(reduce_two_pi(h * L), sn, cs);
        wr[l] = cs;
        wi[l] = -sn;
      }
      for (long long j = 0; j < jb; ++j) {
        double sr = ((cr[0] + cr[1]) + (cr[2] + cr[3])) + ((cr[4] + cr[5]) + (cr[6] + cr[7]));
        double si = ((ci[0] + ci[1]) + (ci[2] + ci[3])) + ((ci[4] + ci[5]) + (ci[6] + ci[7]));
        accr[j] += sr;
        acci[j] += si;
        for (int l = 0; l < 8; ++l) {
          double tr = cr[l] * wr[l] - ci[l] * wi[l];
          ci[l] = cr[l] * wi[l] + ci[l] * wr[l];
          cr[l] = tr;
        }
      }
    }
    for (; m0 < nb; ++m0) {
      const double L = lntab[m0];
      double sn, cs;
      sincos_reduced(reduce_two_pi(tb0 * L), sn, cs);
      const double r = rtab[m0];
      double cr = r * cs, ci = -r * sn;
      sincos_reduced(reduce_two_pi(h * L), sn, cs);
      const double wr = cs, wi = -sn;
      for (long long j = 0; j < jb; ++j) {
        accr[j] += cr;
        acci[j] += ci;
        double tr = cr * wr - ci * wi;
        ci = cr * wi + ci * wr;
        cr = tr;
      }
    }

    const double x = static_cast<double>(nb) + a;
    const double lx = std::log(x);
    const double ramp = 1.0 / std::sqrt(x);
    for (long long j = 0; j < jb; ++j) {
      const double t = tb0 + h * static_cast<double>(j);
      double sn, cs;
      sincos_reduced(reduce_two_pi(t * lx), sn, cs);
      cplx pw = ramp * cplx(cs, -sn);
      cplx tail = em_tail(cplx(0.5, t), x, pw, 3);
      out[static_cast<size_t>(j0 + j)] = cplx(accr[j], acci[j]) + tail;
    }
  }
  return out;
}

}  // namespace hzlab
