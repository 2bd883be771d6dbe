#pragma once
// Run configuration shared by the command-line tool and the validation
// suite: one flat struct of knobs, a line-oriented key=value text format
// (round-trip exact, '#' comment lines), and range validation.

#include <string>

namespace hzlab {

// All knobs for a tool invocation. Defaults are the documented baseline; the
// text format only needs to mention keys that differ. Execution is
// sequential regardless of `workers` (the reduction order is fixed), so the
// field only documents intent and must stay >= 1.
struct RunConfig {
  std::string alpha = "golden";  // decimal | golden | sqrt2m1 | rational:a/q
                                 // | liouville:growth,depth
  double T = 1000.0;             // moment / distribution / audit scale
  double k = 2.0;                // moment order parameter (2k-th moment)
  std::string mode = "smooth";   // moment mode: smooth | sharp (alias
                                 // sharp0T) | sharpT2T (alias dyadic)
  double t_min = 10.0;           // evaluation grid start
  double t_max = 10.0;           // evaluation grid end
  long long t_count = 1;         // evaluation grid points (0 = header only)
  long long n_samples = 1000;    // distribution sample count
  long long seed = 1;            // sampling seed
  double step_factor = 0.05;     // quadrature step h = step_factor / log T
  double C = 1.0;                // near-diagonal window constant
  double eps = 0.1;              // near-diagonal window exponent
  double delta = 0.5;            // continued-fraction growth-check exponent
  double A = 3.0;                // smoothing-weight decay exponent
  long long workers = 1;         // advisory; execution is sequential
  long long work_budget = 24000000000LL;  // oscillatory-audit step budget
  std::string output;            // output path ("" = stdout)
  std::string cache_dir;         // sample-cache directory ("" = default)

  bool operator==(const RunConfig&) const = default;
};

// One "key=value" line per field, fixed order, every field present. Doubles
// are printed with enough digits that parse_config_text restores them
// exactly.
std::string serialize_config(const RunConfig& config);

// Single-line rendering "key=value key=value ..." used in CSV comment rows.
std::string config_summary_line(const RunConfig& config);

// Applies one key=value pair. Unknown keys, unparsable numbers, and trailing
// junk throw std::invalid_argument. Values are whitespace-trimmed.
void apply_config_kv(RunConfig& config, const std::string& key,
                     const std::string& value);

// Parses a config text: blank lines and lines whose first non-space
// character is '#' are skipped; every other line must be key=value.
// Starts from `base` (defaults if omitted) and overrides field by field.
RunConfig parse_config_text(const std::string& text,
                            const RunConfig& base = RunConfig{});

// Reads the file and delegates to parse_config_text. Throws
// std::runtime_error when the file cannot be read.
RunConfig load_config_file(const std::string& path,
                           const RunConfig& base = RunConfig{});

// Range validation; throws std::invalid_argument naming the offending key.
//   T in [10, 1e9]; k in [0, 8]; mode in {smooth, sharp, sharp0T, sharpT2T,
//   dyadic};
//   grid: t_count in [0, 1e8], t_min <= t_max when t_count > 1, t_min >= 1;
//   n_samples in [0, 1e9]; step_factor in (0, 10]; C > 0; eps in [0, 1);
//   delta in (0, 2]; A in [1, 12]; workers in [1, 64]; work_budget >= 1;
//   every real knob finite.
void validate_config(const RunConfig& config);

}  // namespace hzlab
