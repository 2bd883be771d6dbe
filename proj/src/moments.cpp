#include "hzlab/moments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hzlab/cache.hpp"
#include "hzlab/special.hpp"
#include "hzlab/zeta.hpp"

namespace hzlab {

namespace {

struct KahanC {
  double s = 0.0, c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

// |z|^{2k} from z2 = |z|^2, with exact fast paths for the half-integer k
// the Hölder chain uses.
double pow_2k(double z2, double k) {
  if (k == 0.0) return 1.0;
  if (z2 <= 0.0) return 0.0;
  if (k == 0.5) return std::sqrt(z2);
  if (k == 1.0) return z2;
  if (k == 1.5) return z2 * std::sqrt(z2);
  if (k == 2.0) return z2 * z2;
  return std::exp(k * std::log(z2));
}

double bump_phi(double u) {
  if (u <= 0.5 || u >= 2.5) return 0.0;
  double d = (u - 0.5) * (2.5 - u);
  return std::exp(1.0 - 1.0 / d);
}

double bump_dphi(double u) {
  if (u <= 0.5 || u >= 2.5) return 0.0;
  double d = (u - 0.5) * (2.5 - u);
  return bump_phi(u) * (3.0 - 2.0 * u) / (d * d);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Kolmogorov–Smirnov distance of sorted samples against a CDF.
template <typename Cdf>
double ks_distance(const std::vector<double>& sorted, Cdf cdf) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    double f = cdf(sorted[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return std::min(d, 1.0);
}

}  // namespace

SmoothWindow make_bump_window() {
  SmoothWindow w;
  w.phi = bump_phi;
  w.dphi = bump_dphi;
  w.support_lo = 0.5;
  w.support_hi = 2.5;
  // Composite Simpson on the support; every derivative vanishes at the
  // endpoints, so convergence is much faster than the generic h^4.
  const long long m = 200000;
  const double h = 2.0 / static_cast<double>(2 * m);
  KahanC acc;
  for (long long j = 0; j <= 2 * m; ++j) {
    double u = 0.5 + h * static_cast<double>(j);
    double wt = (j == 0 || j == 2 * m) ? 1.0 : ((j & 1) ? 4.0 : 2.0);
    acc.add(wt * bump_phi(u));
  }
  w.mass = acc.s * h / 3.0;
  return w;
}

const char* moment_mode_name(MomentMode mode) {
  switch (mode) {
    case MomentMode::sharp_0_T: return "sharp0T";
    case MomentMode::sharp_T_2T: return "sharpT2T";
    case MomentMode::smooth: return "smooth";
  }
  return "?";
}

MomentMode parse_moment_mode(const std::string& name) {
  if (name == "sharp0T" || name == "sharp") return MomentMode::sharp_0_T;
  if (name == "sharpT2T" || name == "dyadic") return MomentMode::sharp_T_2T;
  if (name == "smooth") return MomentMode::smooth;
  throw std::invalid_argument("unknown moment mode: " + name);
}

std::vector<MomentEstimate> moment_integrals(const ShiftParameter& alpha, double T,
                                             const std::vector<double>& ks, MomentMode mode,
                                             const QuadratureSpec& spec,
                                             const SmoothWindow* window) {
  if (!(T >= 100.0)) throw std::invalid_argument("moment_integral: T >= 100 required");
  if (ks.empty()) throw std::invalid_argument("moment_integral: no k values");
  for (double k : ks) {
    if (!(k >= 0.0 && k <= 4.0))
      throw std::invalid_argument("moment_integral: k must lie in [0, 4]");
  }
  if (mode == MomentMode::smooth && (window == nullptr || !(window->mass > 0.0)))
    throw std::invalid_argument("moment_integral: smooth mode needs a window with mass");

  double t_lo = 0.0, t_hi = T;
  if (mode == MomentMode::sharp_T_2T) {
    t_lo = T;
    t_hi = 2.0 * T;
  } else if (mode == MomentMode::smooth) {
    t_lo = window->support_lo * T;
    t_hi = window->support_hi * T;
  }
  const double range = t_hi - t_lo;

  double step = spec.step_override > 0.0 ? spec.step_override : spec.step_factor / std::log(T);
  long long m = static_cast<long long>(std::ceil(range / step));
  if (m < 4) m = 4;
  if (m & 1) ++m;  // the coarse Simpson level needs an even interval count
  const long long points = 2 * m + 1;
  if (points > spec.max_points)
    throw std::runtime_error("moment_integral: quadrature grid exceeds the point budget");
  const double d = range / static_cast<double>(2 * m);

  const auto t_start = std::chrono::steady_clock::now();
  const size_t nk = ks.size();
  std::vector<KahanC> fine(nk), coarse(nk);

  constexpr long long kChunk = 1LL << 19;
  for (long long start = 0; start < points; start += kChunk) {
    const long long len = std::min(kChunk, points - start);
    std::vector<cplx> vals =
        zeta_critical_grid(alpha, t_lo + d * static_cast<double>(start), d, len);
    for (long long i = 0; i < len; ++i) {
      const long long j = start + i;
      const double z2 = std::norm(vals[static_cast<size_t>(i)]);
      double wt = 1.0;
      if (mode == MomentMode::smooth) {
        double t = t_lo + d * static_cast<double>(j);
        wt = window->phi(t / T);
      }
      const double wf = (j == 0 || j == 2 * m) ? 1.0 : ((j & 1) ? 4.0 : 2.0);
      const bool on_coarse = (j & 1) == 0;
      double wc = 0.0;
      if (on_coarse) {
        const long long jc = j / 2;
        wc = (jc == 0 || jc == m) ? 1.0 : ((jc & 1) ? 4.0 : 2.0);
      }
      for (size_t q = 0; q < nk; ++q) {
        const double f = wt * pow_2k(z2, ks[q]);
        fine[q].add(wf * f);
        if (on_coarse) coarse[q].add(wc * f);
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  std::vector<MomentEstimate> out(nk);
  for (size_t q = 0; q < nk; ++q) {
    const double v_fine = fine[q].s * d / 3.0;
    const double v_coarse = coarse[q].s * 2.0 * d / 3.0;
    MomentEstimate& e = out[q];
    e.value = v_fine;
    e.k = ks[q];
    e.T = T;
    e.alpha_tag = alpha.tag;
    e.mode = mode;
    e.quad_points = points;
    e.quad_error_estimate = std::abs(v_fine - v_coarse) / 3.0;
    e.wall_seconds = seconds;
    if (!(e.value >= 0.0))
      throw std::runtime_error("moment_integral: negative quadrature value");
    if (e.quad_error_estimate > 0.05 * std::max(e.value, 1e-300))
      throw std::runtime_error("moment_integral: halving estimate above 5% of the value");
  }
  return out;
}

MomentEstimate moment_integral(const ShiftParameter& alpha, double T, double k, MomentMode mode,
                               const QuadratureSpec& spec, const SmoothWindow* window) {
  return moment_integrals(alpha, T, {k}, mode, spec, window)[0];
}

double c_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw std::invalid_argument("c_alpha: alpha must lie in (0, 1]");
  return -digamma(alpha);
}

double second_moment_prediction(const ShiftParameter& alpha, double T) {
  if (!(T >= 100.0)) throw std::invalid_argument("second_moment_prediction: T >= 100 required");
  return T * std::log(T) + T * (c_alpha(alpha.value) + kEulerGamma - 1.0 - kLog2Pi);
}

double rational_fourth_prediction(long long a, long long q, double T) {
  if (q < 3 || a < 1 || a >= q || std::gcd(a, q) != 1)
    throw std::invalid_argument(
        "rational_fourth_prediction: need 1 <= a < q, gcd(a,q) = 1, q >= 3");
  if (!(T >= 100.0))
    throw std::invalid_argument("rational_fourth_prediction: T >= 100 required");
  double prod = 1.0;
  long long rest = q;
  for (long long p = 2; p * p <= rest; ++p) {
    if (rest % p == 0) {
      prod *= 1.0 - 1.0 / static_cast<double>(p + 1);
      while (rest % p == 0) rest /= p;
    }
  }
  if (rest > 1) prod *= 1.0 - 1.0 / static_cast<double>(rest + 1);
  const double lt = std::log(T);
  const double pi2 = 9.8696044010893586188;  // pi^2
  return T * lt * lt * lt * lt / (2.0 * pi2 * static_cast<double>(q)) * prod;
}

double conjecture_prediction(double T, int k, MomentMode mode, const SmoothWindow* window) {
  if (!(T >= 100.0)) throw std::invalid_argument("conjecture_prediction: T >= 100 required");
  if (k != 1 && k != 2) throw std::invalid_argument("conjecture_prediction: k must be 1 or 2");
  double base = (k == 1 ? 1.0 : 2.0) * T * std::pow(std::log(T), static_cast<double>(k));
  if (mode == MomentMode::smooth) {
    if (window == nullptr || !(window->mass > 0.0))
      throw std::invalid_argument("conjecture_prediction: smooth mode needs a window");
    base *= window->mass;
  }
  return base;
}

HolderReport holder_consistency(const ShiftParameter& alpha, double T,
                                const QuadratureSpec& spec) {
  const std::vector<double> ks = {0.0, 0.5, 1.0, 1.5, 2.0};
  std::vector<MomentEstimate> est = moment_integrals(alpha, T, ks, MomentMode::sharp_0_T, spec);
  HolderReport rep;
  rep.T = T;
  rep.alpha_tag = alpha.tag;
  const MomentEstimate& m4 = est[4];
  rep.m4 = m4.value;
  rep.m4_quad_error = m4.quad_error_estimate;
  const double rel4 = m4.quad_error_estimate / std::max(m4.value, 1e-300);
  bool all_ok = true;
  for (size_t q = 0; q + 1 < est.size(); ++q) {
    const MomentEstimate& e = est[q];
    HolderRow row;
    row.k = e.k;
    row.m2k = e.value;
    row.bound = std::pow(T, 1.0 - 0.5 * e.k) * std::pow(rep.m4, 0.5 * e.k);
    row.slack = row.bound / std::max(e.value, 1e-300);
    const double tol = 2.0 * (e.quad_error_estimate / std::max(e.value, 1e-300) +
                              0.5 * e.k * rel4) +
                       1e-12;
    row.ok = e.value <= row.bound * (1.0 + tol);
    all_ok = all_ok && row.ok;
    rep.rows.push_back(row);
  }
  const MomentEstimate& m2 = est[2];
  const double rel2 = m2.quad_error_estimate / std::max(m2.value, 1e-300);
  rep.m4_lower_ok =
      rep.m4 * (1.0 + 2.0 * (rel4 + 2.0 * rel2) + 1e-12) >= m2.value * m2.value / T;
  rep.all_ok = all_ok && rep.m4_lower_ok;
  return rep;
}

std::vector<SamplePoint> distribution_samples(const ShiftParameter& alpha, double T,
                                              long long n_samples, unsigned long long seed,
                                              const std::string& cache_dir, bool* cache_hit,
                                              std::string* cache_path) {
  if (!(T > 0.0)) throw std::invalid_argument("distribution_samples: T > 0 required");
  if (n_samples < 1) throw std::invalid_argument("distribution_samples: n_samples >= 1");

  char tbuf[40];
  std::snprintf(tbuf, sizeof tbuf, "%.17g", T);
  std::string header = "# samples alpha=" + alpha.tag + " T=" + tbuf +
                       " seed=" + std::to_string(seed) + " version=1";
  const std::string dir = resolve_cache_dir(cache_dir);
  const std::string path =
      dir + "/dist_" + hex64(fnv1a64(header)) + ".csv";
  if (cache_hit != nullptr) *cache_hit = false;
  if (cache_path != nullptr) *cache_path = path;

  // Reuse a cache file whose identity line matches and which holds enough rows.
  {
    std::ifstream in(path);
    if (in) {
      std::string line;
      if (std::getline(in, line) && line.rfind(header + " n=", 0) == 0) {
        long long n_file = std::atoll(line.c_str() + header.size() + 3);
        if (n_file >= n_samples && std::getline(in, line) && line == "t,re,im") {
          std::vector<SamplePoint> rows;
          rows.reserve(static_cast<size_t>(n_samples));
          while (static_cast<long long>(rows.size()) < n_samples && std::getline(in, line)) {
            SamplePoint p;
            if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &p.t, &p.re, &p.im) == 3)
              rows.push_back(p);
            else
              break;
          }
          if (static_cast<long long>(rows.size()) == n_samples) {
            if (cache_hit != nullptr) *cache_hit = true;
            return rows;
          }
        }
      }
    }
  }

  std::vector<SamplePoint> rows(static_cast<size_t>(n_samples));
  for (long long i = 0; i < n_samples; ++i) {
    std::uint64_t r = splitmix64(seed + static_cast<std::uint64_t>(i) * 0x9E3779B97F4A7C15ull);
    double u = static_cast<double>(r >> 11) * 0x1.0p-53;
    double t = T * (1.0 + u);
    cplx z = zeta_critical(t, alpha);
    rows[static_cast<size_t>(i)] = {t, z.real(), z.imag()};
  }

  std::ostringstream out;
  out << header << " n=" << n_samples << "\n" << "t,re,im\n";
  char buf[120];
  for (const SamplePoint& p : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.t, p.re, p.im);
    out << buf;
  }
  atomic_write_file(path, out.str());
  return rows;
}

DistributionReport gaussian_sample_and_test(const ShiftParameter& alpha, double T,
                                            long long n_samples, unsigned long long seed,
                                            const std::string& cache_dir) {
  if (!(T >= 1e3))
    throw std::invalid_argument("gaussian_sample_and_test: T >= 1e3 required");
  if (n_samples < 100)
    throw std::invalid_argument("gaussian_sample_and_test: n_samples >= 100 required");

  DistributionReport rep;
  rep.T = T;
  rep.n_samples = n_samples;
  rep.seed = seed;
  std::vector<SamplePoint> rows = distribution_samples(alpha, T, n_samples, seed, cache_dir,
                                                       &rep.cache_hit, &rep.cache_path);

  const double lt = std::log(T);
  const double inv_sqrt_lt = 1.0 / std::sqrt(lt);
  std::vector<double> mod2(rows.size()), re(rows.size()), im(rows.size());
  KahanC m1, m2, m3, m4;
  for (size_t i = 0; i < rows.size(); ++i) {
    double x = (rows[i].re * rows[i].re + rows[i].im * rows[i].im) / lt;
    mod2[i] = x;
    re[i] = rows[i].re * inv_sqrt_lt;
    im[i] = rows[i].im * inv_sqrt_lt;
    m1.add(x);
    m2.add(x * x);
    m3.add(x * x * x);
    m4.add(x * x * x * x);
  }
  const double n = static_cast<double>(rows.size());
  rep.m1 = m1.s / n;
  rep.m2 = m2.s / n;
  rep.m3 = m3.s / n;
  rep.m4 = m4.s / n;

  std::sort(mod2.begin(), mod2.end());
  std::sort(re.begin(), re.end());
  std::sort(im.begin(), im.end());
  rep.ks_modulus = ks_distance(mod2, [](double x) {
    return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x);
  });
  // Normal CDFs: variance 1/2 => F(x) = erfc(-x)/2; variance 1 => erfc(-x/sqrt2)/2.
  auto cdf_half = [](double x) { return 0.5 * std::erfc(-x); };
  auto cdf_unit = [](double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); };
  rep.ks_real_var_half = ks_distance(re, cdf_half);
  rep.ks_real_var_unit = ks_distance(re, cdf_unit);
  rep.ks_imag_var_half = ks_distance(im, cdf_half);
  rep.ks_imag_var_unit = ks_distance(im, cdf_unit);
  return rep;
}

}  // namespace hzlab
