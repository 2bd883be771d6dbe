// Python bindings for the core operations: critical-line evaluation,
// continued-fraction diagnostics, moment integrals, the seeded value
// distribution, and the off-diagonal machinery. Shift parameters are passed
// as the same string specs the command line accepts ("golden", "sqrt2m1",
// "1", "rational:a/q", "liouville:g,depth", or a decimal literal).

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hzlab/diophantine.hpp"
#include "hzlab/moments.hpp"
#include "hzlab/offdiag.hpp"
#include "hzlab/special.hpp"
#include "hzlab/zeta.hpp"

namespace py = pybind11;

namespace {

hzlab::ShiftParameter shift_of(const std::string& spec) {
  return hzlab::parse_shift(spec);
}

py::object py_bigint(const hzlab::i128& v) {
  // Route through the decimal string so quotients beyond 2^63 stay exact.
  return py::module_::import("builtins").attr("int")(hzlab::i128_to_string(v));
}

const hzlab::SmoothWindow& bump_window() {
  static const hzlab::SmoothWindow window = hzlab::make_bump_window();
  return window;
}

const hzlab::SmoothWindow* window_for(hzlab::MomentMode mode) {
  return mode == hzlab::MomentMode::smooth ? &bump_window() : nullptr;
}

hzlab::DiagonalShiftModel model_of(const std::string& spec) {
  if (spec == "generic") return hzlab::DiagonalShiftModel::generic();
  if (spec.rfind("quadratic:", 0) == 0) {
    long long r = 0, s = 0;
    if (std::sscanf(spec.c_str() + 10, "%lld,%lld", &r, &s) != 2)
      throw std::invalid_argument("diagonal model: expected quadratic:r,s");
    return hzlab::DiagonalShiftModel::quadratic(r, s);
  }
  if (spec.rfind("rational:", 0) == 0) {
    long long a = 0, q = 0;
    if (std::sscanf(spec.c_str() + 9, "%lld/%lld", &a, &q) != 2)
      throw std::invalid_argument("diagonal model: expected rational:a/q");
    return hzlab::DiagonalShiftModel::rational(a, q);
  }
  throw std::invalid_argument("diagonal model: '" + spec +
                              "' (want generic, quadratic:r,s, or rational:a/q)");
}

}  // namespace

PYBIND11_MODULE(_hzlab, m) {
  m.doc() =
      "Numerical laboratory for the Hurwitz zeta function on the critical "
      "line";
  m.attr("__version__") = "1.0.0";

  // ---- evaluation ---------------------------------------------------------
  m.def(
      "zeta_critical",
      [](double t, const std::string& alpha) {
        return hzlab::zeta_critical(t, shift_of(alpha), hzlab::EvalPolicy{});
      },
      py::arg("t"), py::arg("alpha"),
      "zeta(1/2 + it, alpha); Euler-Maclaurin for small t, smoothed "
      "approximate functional equation for large t");

  m.def(
      "hurwitz_zeta",
      [](std::complex<double> s, const std::string& alpha) {
        return hzlab::hurwitz_zeta_em(s, shift_of(alpha));
      },
      py::arg("s"), py::arg("alpha"),
      "Euler-Maclaurin reference evaluation of zeta(s, alpha)");

  m.def(
      "hurwitz_afe",
      [](double t, const std::string& alpha) {
        const hzlab::AfeResult r = hzlab::hurwitz_afe(t, shift_of(alpha));
        py::dict d;
        d["value"] = r.value;
        d["tau"] = r.tau;
        d["cutoff"] = r.cutoff;
        d["main_terms"] = r.main_terms;
        d["dual_terms"] = r.dual_terms;
        return d;
      },
      py::arg("t"), py::arg("alpha"),
      "smoothed approximate functional equation on the critical line, with "
      "term counts");

  m.def(
      "periodic_zeta",
      [](std::complex<double> s, double lambda) {
        return hzlab::periodic_zeta(s, lambda);
      },
      py::arg("s"), py::arg("lambda_"),
      "P(s, lambda) = sum_m e(m lambda) m^-s by Euler-Maclaurin with "
      "character twist");

  m.def(
      "functional_equation_residual",
      [](std::complex<double> z, const std::string& alpha) {
        return hzlab::functional_equation_residual(z, shift_of(alpha));
      },
      py::arg("z"), py::arg("alpha"),
      "residual of the Hurwitz functional equation at 1 - z (pure numerical "
      "error)");

  m.def(
      "chi_p_identity_residual",
      [](double t, const std::string& alpha) {
        return hzlab::chi_p_identity_residual(t, shift_of(alpha));
      },
      py::arg("t"), py::arg("alpha"),
      "residual of the critical-line chi * P reflection identity");

  // ---- Diophantine toolkit ------------------------------------------------
  m.def(
      "continued_fraction",
      [](const std::string& alpha) {
        const hzlab::ShiftParameter shift = shift_of(alpha);
        const hzlab::ContinuedFraction cf =
            hzlab::expand_cf(shift, hzlab::i128(1) << 100);
        py::list quotients, convergents;
        for (const hzlab::i128& a : cf.a) quotients.append(py_bigint(a));
        for (size_t i = 0; i < cf.size(); ++i)
          convergents.append(py::make_tuple(py_bigint(cf.p[i]), py_bigint(cf.q[i])));
        py::dict d;
        d["quotients"] = quotients;
        d["convergents"] = convergents;
        d["precision_exhausted"] = cf.precision_exhausted;
        d["overflow_truncated"] = cf.overflow_truncated;
        try {
          d["mu_hat"] = hzlab::irrationality_exponent_estimate(cf);
        } catch (const std::exception&) {
          d["mu_hat"] = py::none();
        }
        return d;
      },
      py::arg("alpha"),
      "continued-fraction expansion with convergents and an irrationality "
      "exponent estimate (None when too few convergents)");

  m.def(
      "growth_check",
      [](const std::string& alpha, double delta, double C) {
        const hzlab::ContinuedFraction cf =
            hzlab::expand_cf(shift_of(alpha), hzlab::i128(1) << 100);
        return hzlab::growth_check(cf, delta, C);
      },
      py::arg("alpha"), py::arg("delta"), py::arg("C") = 10.0,
      "checks q_{k+1} <= C * q_k^(2 - delta) along the convergent ladder");

  m.def(
      "distance_power_sum",
      [](const std::string& alpha, long long n, double eta) {
        return hzlab::distance_power_sum(shift_of(alpha), n, eta).value;
      },
      py::arg("alpha"), py::arg("N"), py::arg("eta") = 0.5,
      "sum_{h<=N} ||h alpha||^-eta (irrational shifts only)");

  m.def(
      "bilinear_exp_sum",
      [](const std::string& alpha, long long d, long long x, long long y) {
        return hzlab::bilinear_exp_sum(shift_of(alpha), d, x, y);
      },
      py::arg("alpha"), py::arg("d"), py::arg("x"), py::arg("y"),
      "S = sum_{m<=x} sum_{n<=y} e(d m n alpha) via closed geometric inner "
      "sums");

  // ---- moments --------------------------------------------------------------
  m.def(
      "moment_integral",
      [](const std::string& alpha, double T, double k, const std::string& mode,
         double step_factor) {
        const hzlab::MomentMode mm = hzlab::parse_moment_mode(mode);
        hzlab::QuadratureSpec spec;
        spec.step_factor = step_factor;
        const hzlab::MomentEstimate est = hzlab::moment_integral(
            shift_of(alpha), T, k, mm, spec, window_for(mm));
        py::dict d;
        d["value"] = est.value;
        d["quad_points"] = est.quad_points;
        d["quad_error_estimate"] = est.quad_error_estimate;
        d["wall_seconds"] = est.wall_seconds;
        return d;
      },
      py::arg("alpha"), py::arg("T"), py::arg("k") = 1.0,
      py::arg("mode") = "sharp0T", py::arg("step_factor") = 0.05,
      "2k-th moment integral of |zeta(1/2+it, alpha)| (modes sharp0T, "
      "sharpT2T, smooth)");

  m.def(
      "second_moment_prediction",
      [](const std::string& alpha, double T) {
        return hzlab::second_moment_prediction(shift_of(alpha), T);
      },
      py::arg("alpha"), py::arg("T"),
      "T log T + (c(alpha) + gamma - 1 - log 2 pi) T");

  m.def(
      "c_alpha",
      [](const std::string& alpha) { return hzlab::c_alpha(shift_of(alpha)); },
      py::arg("alpha"), "the shift-dependent constant in the second-moment main term");

  m.def(
      "conjecture_prediction",
      [](double T, int k, const std::string& mode) {
        const hzlab::MomentMode mm = hzlab::parse_moment_mode(mode);
        return hzlab::conjecture_prediction(T, k, mm, window_for(mm));
      },
      py::arg("T"), py::arg("k"), py::arg("mode"),
      "leading-order prediction for the 2k-th moment (k = 1 or 2)");

  m.def(
      "rational_fourth_prediction",
      [](long long a, long long q, double T) {
        return hzlab::rational_fourth_prediction(a, q, T);
      },
      py::arg("a"), py::arg("q"), py::arg("T"),
      "fourth-moment main term for the rational shift a/q, q >= 3");

  m.def(
      "holder_consistency",
      [](const std::string& alpha, double T) {
        const hzlab::HolderReport rep =
            hzlab::holder_consistency(shift_of(alpha), T, hzlab::QuadratureSpec{});
        py::list rows;
        for (const hzlab::HolderRow& r : rep.rows) {
          py::dict row;
          row["k"] = r.k;
          row["m2k"] = r.m2k;
          row["bound"] = r.bound;
          row["slack"] = r.slack;
          row["ok"] = r.ok;
          rows.append(row);
        }
        py::dict d;
        d["T"] = rep.T;
        d["alpha"] = rep.alpha_tag;
        d["m4"] = rep.m4;
        d["rows"] = rows;
        d["m4_lower_ok"] = rep.m4_lower_ok;
        d["all_ok"] = rep.all_ok;
        return d;
      },
      py::arg("alpha"), py::arg("T"),
      "interpolation chain M_2k <= T^(1-k/2) M_4^(k/2) at k = 0, 1/2, 1, 3/2");

  // ---- value distribution ---------------------------------------------------
  m.def(
      "distribution_samples",
      [](const std::string& alpha, double T, long long n, unsigned long long seed,
         const std::string& cache_dir) {
        const std::vector<hzlab::SamplePoint> pts =
            hzlab::distribution_samples(shift_of(alpha), T, n, seed, cache_dir);
        py::list out;
        for (const hzlab::SamplePoint& p : pts)
          out.append(py::make_tuple(p.t, p.re, p.im));
        return out;
      },
      py::arg("alpha"), py::arg("T"), py::arg("n_samples"), py::arg("seed") = 1,
      py::arg("cache_dir") = std::string{},
      "seeded (t, Re z, Im z) samples with t uniform on [T, 2T], disk-cached");

  m.def(
      "gaussian_sample_and_test",
      [](const std::string& alpha, double T, long long n, unsigned long long seed,
         const std::string& cache_dir) {
        const hzlab::DistributionReport r = hzlab::gaussian_sample_and_test(
            shift_of(alpha), T, n, seed, cache_dir);
        py::dict d;
        d["T"] = r.T;
        d["n_samples"] = r.n_samples;
        d["seed"] = r.seed;
        d["ks_modulus"] = r.ks_modulus;
        d["ks_real_var_half"] = r.ks_real_var_half;
        d["ks_real_var_unit"] = r.ks_real_var_unit;
        d["ks_imag_var_half"] = r.ks_imag_var_half;
        d["ks_imag_var_unit"] = r.ks_imag_var_unit;
        d["m1"] = r.m1;
        d["m2"] = r.m2;
        d["m3"] = r.m3;
        d["m4"] = r.m4;
        d["cache_hit"] = r.cache_hit;
        d["cache_path"] = r.cache_path;
        return d;
      },
      py::arg("alpha"), py::arg("T"), py::arg("n_samples"), py::arg("seed") = 1,
      py::arg("cache_dir") = std::string{},
      "moments of |z|^2 / log T and Kolmogorov-Smirnov distances against the "
      "Gaussian limit");

  // ---- off-diagonal machinery ------------------------------------------------
  m.def(
      "parametrize_offdiagonal",
      [](long long h1, long long h2, long long n_max) {
        py::list out;
        for (const hzlab::OffDiagonalTuple& t :
             hzlab::parametrize_offdiagonal(h1, h2, n_max))
          out.append(py::make_tuple(t.n1, t.n2, t.n3, t.n4));
        return out;
      },
      py::arg("h1"), py::arg("h2"), py::arg("n_max"),
      "canonical solutions of n1 n2 - n3 n4 = h1, n1 + n2 - n3 - n4 = h2 "
      "with n4 <= n3 <= n_max");

  m.def(
      "enumerate_diagonal_count",
      [](int k, const std::string& model, long long n_bound) {
        hzlab::DiagonalEquationInstance instance;
        instance.k = k;
        instance.shift = model_of(model);
        instance.n_bound = n_bound;
        return hzlab::enumerate_diagonal(instance).count;
      },
      py::arg("k"), py::arg("model"), py::arg("N"),
      "number of ordered 2k-tuple solutions of the diagonal equation; model "
      "is generic, quadratic:r,s, or rational:a/q");

  m.def(
      "diagonal_main_term",
      [](const std::string& alpha, double T) {
        return hzlab::diagonal_main_term(shift_of(alpha), T);
      },
      py::arg("alpha"), py::arg("T"),
      "2T (sum_{0<=n<=T} 1/(n+alpha))^2 via the digamma closed form");

  m.def(
      "offdiag_oscillatory_estimate",
      [](const std::string& alpha, double T, double eps, double C,
         long long work_budget) {
        return hzlab::offdiag_oscillatory_estimate(
            shift_of(alpha), T, bump_window(), eps, C, work_budget);
      },
      py::arg("alpha"), py::arg("T"), py::arg("eps") = 0.1, py::arg("C") = 1.0,
      py::arg("work_budget") = 24000000000LL,
      "windowed oscillatory sum over filtered near-diagonal tuples at scale T");
}
