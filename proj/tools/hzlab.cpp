// Command-line front door: evaluate zeta on the critical line, report
// continued-fraction diagnostics, compute moment integrals with disk-cached
// reuse, run the seeded value-distribution experiment, dump off-diagonal
// tuple audits, and execute the validation suite.
//
// Exit codes: 0 success, 1 validation/computation failure, 2 usage error.
// Every CSV starts with a header row followed by a `# config:` comment row
// recording the resolved configuration.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hzlab/acceptance.hpp"
#include "hzlab/diophantine.hpp"
#include "hzlab/momentcache.hpp"
#include "hzlab/moments.hpp"
#include "hzlab/offdiag.hpp"
#include "hzlab/runconfig.hpp"
#include "hzlab/special.hpp"
#include "hzlab/zeta.hpp"

namespace {

using hzlab::RunConfig;
using hzlab::ShiftParameter;
using ordered_json = nlohmann::ordered_json;

struct CliState {
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> overrides;
  // offdiag extras
  long long h1 = 0, h2 = 0, n_max = 1000;
  bool estimate = false;
  // validate extras
  bool list_only = false;
};

void add_common_options(CLI::App* sub, CliState& state) {
  sub->add_option("--config", state.config_file,
                  "key=value config file; flags override file entries");
  static const char* keys[] = {"alpha",   "T",           "k",        "mode",
                               "t_min",   "t_max",       "t_count",  "n_samples",
                               "seed",    "step_factor", "C",        "eps",
                               "delta",   "A",           "workers",  "work_budget",
                               "output",  "cache_dir"};
  for (const char* key : keys) {
    sub->add_option_function<std::string>(
        std::string("--") + key,
        [&state, key](const std::string& value) {
          state.overrides.emplace_back(key, value);
        },
        std::string("config key ") + key);
  }
}

RunConfig resolve_config(const CliState& state) {
  RunConfig config;
  if (!state.config_file.empty()) config = hzlab::load_config_file(state.config_file);
  for (const auto& [key, value] : state.overrides)
    hzlab::apply_config_kv(config, key, value);
  hzlab::validate_config(config);
  return config;
}

ShiftParameter resolve_shift(const std::string& spec) {
  const ShiftParameter shift = hzlab::parse_shift(spec);
  const bool named = spec == "golden" || spec == "sqrt2m1" || spec == "1" ||
                     spec.rfind("rational:", 0) == 0 ||
                     spec.rfind("liouville:", 0) == 0;
  if (!named)
    std::fprintf(stderr,
                 "warning: decimal shift '%s' is treated as the exact rational "
                 "%lld/%lld; use a named preset for an irrational target\n",
                 spec.c_str(), shift.rat_a, shift.rat_q);
  return shift;
}

struct Sink {
  std::FILE* f = stdout;
  bool owned = false;
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) throw std::runtime_error("cannot open output file '" + path + "'");
    owned = true;
  }
  Sink(const Sink&) = delete;
  Sink& operator=(const Sink&) = delete;
  ~Sink() {
    if (owned && f != nullptr) std::fclose(f);
  }
};

void csv_preamble(std::FILE* f, const char* header, const RunConfig& config) {
  std::fprintf(f, "%s\n# config: %s\n", header,
               hzlab::config_summary_line(config).c_str());
}

// ---------------------------------------------------------------- eval ----

int cmd_eval(const RunConfig& config) {
  const ShiftParameter alpha = resolve_shift(config.alpha);
  Sink sink(config.output);
  csv_preamble(sink.f, "t,zeta_re,zeta_im,zeta_abs,method", config);
  if (config.t_count > 0) {
    const double dt = config.t_count > 1
                          ? (config.t_max - config.t_min) /
                                static_cast<double>(config.t_count - 1)
                          : 0.0;
    const hzlab::EvalPolicy policy{};
    for (long long i = 0; i < config.t_count; ++i) {
      const double t = config.t_min + dt * static_cast<double>(i);
      const hzlab::cplx z = hzlab::zeta_critical(t, alpha, policy);
      std::fprintf(sink.f, "%.12g,%.12g,%.12g,%.12g,%s\n", t, z.real(), z.imag(),
                   std::abs(z), t <= policy.method_tie_t ? "em" : "afe");
    }
  }
  return 0;
}

// ------------------------------------------------------------------ cf ----

int cmd_cf(const RunConfig& config) {
  const ShiftParameter alpha = resolve_shift(config.alpha);
  const hzlab::ContinuedFraction cf = hzlab::expand_cf(alpha, hzlab::i128(1) << 100);
  if (cf.precision_exhausted)
    std::fprintf(stderr,
                 "warning: expansion stopped at the value's precision floor; "
                 "deeper quotients are not certified\n");

  ordered_json report;
  report["alpha"] = alpha.tag;
  report["kind"] = alpha.is_rational() ? "rational" : "irrational";
  report["value"] = alpha.value;
  report["precision_exhausted"] = cf.precision_exhausted;
  report["overflow_truncated"] = cf.overflow_truncated;

  ordered_json quotients = ordered_json::array();
  for (const hzlab::i128& a : cf.a) quotients.push_back(hzlab::i128_to_string(a));
  report["partial_quotients"] = quotients;

  ordered_json convergents = ordered_json::array();
  for (size_t i = 0; i < cf.size(); ++i) {
    ordered_json row;
    row["p"] = hzlab::i128_to_string(cf.p[i]);
    row["q"] = hzlab::i128_to_string(cf.q[i]);
    convergents.push_back(std::move(row));
  }
  report["convergents"] = convergents;

  try {
    report["mu_hat"] = hzlab::irrationality_exponent_estimate(cf);
  } catch (const std::exception&) {
    report["mu_hat"] = nullptr;
  }

  report["growth_check"] = {{"delta", config.delta},
                            {"C", 10.0},
                            {"ok", hzlab::growth_check(cf, config.delta)}};

  if (alpha.is_rational()) {
    report["distance_sums"] = nullptr;
    report["distance_sums_note"] =
        "undefined for rational shifts (exact zero distance at multiples of q)";
  } else {
    ordered_json table = ordered_json::array();
    for (const long long n : {1000LL, 10000LL, 100000LL, 1000000LL}) {
      const double sum = hzlab::distance_power_sum(alpha, n, 0.5).value;
      ordered_json row;
      row["N"] = n;
      row["sum"] = sum;
      row["per_N"] = sum / static_cast<double>(n);
      table.push_back(std::move(row));
    }
    report["distance_sums"] = table;
  }

  Sink sink(config.output);
  const std::string text = report.dump(2) + "\n";
  std::fwrite(text.data(), 1, text.size(), sink.f);
  return 0;
}

// -------------------------------------------------------------- moment ----

double moment_prediction(const ShiftParameter& alpha, double T, double k,
                         hzlab::MomentMode mode, const hzlab::SmoothWindow* window) {
  if (k == 0.0) return T;
  if (k == 1.0 && mode == hzlab::MomentMode::sharp_0_T)
    return hzlab::second_moment_prediction(alpha, T);
  if (k == 1.0) return hzlab::conjecture_prediction(T, 1, mode, window);
  if (k == 2.0) {
    if (alpha.is_rational() && alpha.rat_q >= 3 && mode == hzlab::MomentMode::sharp_0_T)
      return hzlab::rational_fourth_prediction(alpha.rat_a, alpha.rat_q, T);
    return hzlab::conjecture_prediction(T, 2, mode, window);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

int cmd_moment(const RunConfig& config) {
  const ShiftParameter alpha = resolve_shift(config.alpha);
  const hzlab::MomentMode mode = hzlab::parse_moment_mode(config.mode);
  hzlab::QuadratureSpec spec;
  spec.step_factor = config.step_factor;
  hzlab::SmoothWindow window;
  const hzlab::SmoothWindow* window_ptr = nullptr;
  if (mode == hzlab::MomentMode::smooth) {
    window = hzlab::make_bump_window();
    window_ptr = &window;
  }
  const hzlab::CachedMoment cm = hzlab::cached_moment_integral(
      alpha, config.T, config.k, mode, spec, window_ptr, config.cache_dir);
  std::fprintf(stderr, "# cache %s: %s\n", cm.cache_hit ? "hit" : "miss",
               cm.path.c_str());
  const double prediction =
      moment_prediction(alpha, config.T, config.k, mode, window_ptr);
  const double ratio = cm.est.value / prediction;

  Sink sink(config.output);
  csv_preamble(sink.f, "T,k,mode,value,prediction,ratio,quad_error,points,seconds",
               config);
  std::fprintf(sink.f, "%.12g,%.12g,%s,%.12g,%.12g,%.12g,%.12g,%lld,%.12g\n",
               config.T, config.k, hzlab::moment_mode_name(mode), cm.est.value,
               prediction, ratio, cm.est.quad_error_estimate, cm.est.quad_points,
               cm.est.wall_seconds);
  return 0;
}

// ---------------------------------------------------------------- dist ----

void histogram_rows(std::FILE* f, const char* variable,
                    const std::vector<double>& values) {
  constexpr int kBins = 50;
  double lo = values.front(), hi = values.front();
  for (const double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double width = (hi - lo) / kBins;
  if (width <= 0.0) width = 1.0;
  long long counts[kBins] = {};
  for (const double v : values) {
    int bin = static_cast<int>((v - lo) / width);
    if (bin < 0) bin = 0;
    if (bin >= kBins) bin = kBins - 1;
    ++counts[bin];
  }
  for (int b = 0; b < kBins; ++b)
    std::fprintf(f, "%s,%d,%.12g,%.12g,%lld\n", variable, b,
                 lo + width * b, lo + width * (b + 1), counts[b]);
}

int cmd_dist(const RunConfig& config) {
  const ShiftParameter alpha = resolve_shift(config.alpha);
  const auto seed = static_cast<unsigned long long>(config.seed);
  const std::vector<hzlab::SamplePoint> samples = hzlab::distribution_samples(
      alpha, config.T, config.n_samples, seed, config.cache_dir);
  const hzlab::DistributionReport rep = hzlab::gaussian_sample_and_test(
      alpha, config.T, config.n_samples, seed, config.cache_dir);
  std::fprintf(stderr, "# cache %s: %s\n", rep.cache_hit ? "hit" : "miss",
               rep.cache_path.c_str());

  // Deterministic report: cache coordinates stay on stderr so reruns match.
  ordered_json report;
  report["alpha"] = alpha.tag;
  report["T"] = rep.T;
  report["n_samples"] = rep.n_samples;
  report["seed"] = rep.seed;
  report["moments_of_abs2_over_logT"] = {
      {"m1", rep.m1}, {"m2", rep.m2}, {"m3", rep.m3}, {"m4", rep.m4}};
  report["ks"] = {{"modulus_vs_exp1", rep.ks_modulus},
                  {"re_vs_normal_var_half", rep.ks_real_var_half},
                  {"re_vs_normal_var_unit", rep.ks_real_var_unit},
                  {"im_vs_normal_var_half", rep.ks_imag_var_half},
                  {"im_vs_normal_var_unit", rep.ks_imag_var_unit}};

  Sink sink(config.output);
  const std::string text = report.dump(2) + "\n";
  std::fwrite(text.data(), 1, text.size(), sink.f);

  std::vector<double> abs2, re, im;
  abs2.reserve(samples.size());
  re.reserve(samples.size());
  im.reserve(samples.size());
  for (const hzlab::SamplePoint& s : samples) {
    abs2.push_back(s.re * s.re + s.im * s.im);
    re.push_back(s.re);
    im.push_back(s.im);
  }
  if (config.output.empty()) {
    csv_preamble(sink.f, "variable,bin,bin_lo,bin_hi,count", config);
    histogram_rows(sink.f, "abs2", abs2);
    histogram_rows(sink.f, "re", re);
    histogram_rows(sink.f, "im", im);
  } else {
    Sink hist(config.output + ".hist.csv");
    csv_preamble(hist.f, "variable,bin,bin_lo,bin_hi,count", config);
    histogram_rows(hist.f, "abs2", abs2);
    histogram_rows(hist.f, "re", re);
    histogram_rows(hist.f, "im", im);
  }
  return 0;
}

// -------------------------------------------------------------- offdiag ----

int cmd_offdiag(const RunConfig& config, const CliState& state) {
  const ShiftParameter alpha = resolve_shift(config.alpha);
  Sink sink(config.output);
  if (state.estimate) {
    const hzlab::SmoothWindow window = hzlab::make_bump_window();
    const std::complex<double> est = hzlab::offdiag_oscillatory_estimate(
        alpha, config.T, window, config.eps, config.C, config.work_budget);
    const double diag =
        hzlab::diagonal_main_term(alpha, std::sqrt(config.T / hzlab::kTwoPi));
    csv_preamble(sink.f, "T,alpha,eps,C,est_re,est_im,est_abs,diagonal_scale,fraction",
                 config);
    std::fprintf(sink.f, "%.12g,%s,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                 config.T, alpha.tag.c_str(), config.eps, config.C, est.real(),
                 est.imag(), std::abs(est), diag, std::abs(est) / diag);
    return 0;
  }
  if (state.h1 == 0 && state.h2 == 0)
    throw std::invalid_argument(
        "offdiag: pass --h1/--h2 (not both zero) for a tuple dump, or --estimate");
  const std::vector<hzlab::OffDiagonalTuple> tuples =
      hzlab::parametrize_offdiagonal(state.h1, state.h2, state.n_max);
  csv_preamble(sink.f, "n1,n2,n3,n4,h1,h2,g", config);
  for (const hzlab::GcdGroup& group : hzlab::gcd_refine(tuples, state.h2))
    for (const hzlab::RefinedOffDiagonalTuple& row : group.rows)
      std::fprintf(sink.f, "%lld,%lld,%lld,%lld,%lld,%lld,%lld\n", row.tuple.n1,
                   row.tuple.n2, row.tuple.n3, row.tuple.n4, row.tuple.h1,
                   row.tuple.h2, row.g);
  return 0;
}

// ------------------------------------------------------------- validate ----

int cmd_validate(const RunConfig& config, const CliState& state) {
  if (state.list_only) {
    const std::vector<std::string>& names = hzlab::acceptance_names();
    Sink sink(config.output);
    for (size_t i = 0; i < names.size(); ++i)
      std::fprintf(sink.f, "%2zu %s\n", i + 1, names[i].c_str());
    return 0;
  }
  const hzlab::ValidationRun run = hzlab::run_validation(config);
  Sink sink(config.output);
  std::fwrite(run.report.data(), 1, run.report.size(), sink.f);
  return run.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Numerical laboratory for the Hurwitz zeta function on the critical "
      "line: evaluation, Diophantine reports, moment integrals, value "
      "distribution, off-diagonal audits, and the validation suite."};
  app.require_subcommand(1);
  CliState state;

  CLI::App* eval = app.add_subcommand(
      "eval", "Evaluate zeta(1/2+it, alpha) on a uniform t grid (CSV)");
  add_common_options(eval, state);
  CLI::App* cf = app.add_subcommand(
      "cf", "Continued-fraction report: quotients, convergents, exponent "
            "estimate, growth check, distance sums (JSON)");
  add_common_options(cf, state);
  CLI::App* moment = app.add_subcommand(
      "moment", "Moment integral with prediction and ratio columns (CSV, cached)");
  add_common_options(moment, state);
  CLI::App* dist = app.add_subcommand(
      "dist", "Seeded value-distribution experiment (JSON + histogram CSV)");
  add_common_options(dist, state);
  CLI::App* offdiag = app.add_subcommand(
      "offdiag", "Off-diagonal audits: tuple dumps or the oscillatory estimate");
  add_common_options(offdiag, state);
  offdiag->add_option("--h1", state.h1, "product defect n1*n2 - n3*n4");
  offdiag->add_option("--h2", state.h2, "sum defect n1+n2 - n3-n4");
  offdiag->add_option("--n_max", state.n_max, "tuple dump n3 bound (default 1000)");
  offdiag->add_flag("--estimate", state.estimate,
                    "compute the oscillatory near-diagonal estimate at scale T");
  CLI::App* validate = app.add_subcommand(
      "validate", "Run the twelve-point validation suite (exit 0 iff all pass)");
  add_common_options(validate, state);
  validate->add_flag("--list", state.list_only, "list the checks without running");

  int exit_code = 0;
  eval->callback([&] { exit_code = cmd_eval(resolve_config(state)); });
  cf->callback([&] { exit_code = cmd_cf(resolve_config(state)); });
  moment->callback([&] { exit_code = cmd_moment(resolve_config(state)); });
  dist->callback([&] { exit_code = cmd_dist(resolve_config(state)); });
  offdiag->callback([&] { exit_code = cmd_offdiag(resolve_config(state), state); });
  validate->callback([&] { exit_code = cmd_validate(resolve_config(state), state); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return exit_code;
}
