#include "hzlab/runconfig.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hzlab {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v.empty())
    throw std::invalid_argument("config: empty value for key '" + key + "'");
  errno = 0;
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || errno == ERANGE)
    throw std::invalid_argument("config: key '" + key + "' expects a real number, got '" +
                                v + "'");
  return out;
}

long long parse_int(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v.empty())
    throw std::invalid_argument("config: empty value for key '" + key + "'");
  errno = 0;
  char* end = nullptr;
  const long long out = std::strtoll(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || errno == ERANGE)
    throw std::invalid_argument("config: key '" + key + "' expects an integer, got '" +
                                v + "'");
  return out;
}

// Field table driving serialization and parsing so the two cannot drift.
enum class FieldType { text, real, integer };
struct FieldDesc {
  const char* key;
  FieldType type;
  std::string RunConfig::* text;
  double RunConfig::* real;
  long long RunConfig::* integer;
};

const FieldDesc kFields[] = {
    {"alpha", FieldType::text, &RunConfig::alpha, nullptr, nullptr},
    {"T", FieldType::real, nullptr, &RunConfig::T, nullptr},
    {"k", FieldType::real, nullptr, &RunConfig::k, nullptr},
    {"mode", FieldType::text, &RunConfig::mode, nullptr, nullptr},
    {"t_min", FieldType::real, nullptr, &RunConfig::t_min, nullptr},
    {"t_max", FieldType::real, nullptr, &RunConfig::t_max, nullptr},
    {"t_count", FieldType::integer, nullptr, nullptr, &RunConfig::t_count},
    {"n_samples", FieldType::integer, nullptr, nullptr, &RunConfig::n_samples},
    {"seed", FieldType::integer, nullptr, nullptr, &RunConfig::seed},
    {"step_factor", FieldType::real, nullptr, &RunConfig::step_factor, nullptr},
    {"C", FieldType::real, nullptr, &RunConfig::C, nullptr},
    {"eps", FieldType::real, nullptr, &RunConfig::eps, nullptr},
    {"delta", FieldType::real, nullptr, &RunConfig::delta, nullptr},
    {"A", FieldType::real, nullptr, &RunConfig::A, nullptr},
    {"workers", FieldType::integer, nullptr, nullptr, &RunConfig::workers},
    {"work_budget", FieldType::integer, nullptr, nullptr, &RunConfig::work_budget},
    {"output", FieldType::text, &RunConfig::output, nullptr, nullptr},
    {"cache_dir", FieldType::text, &RunConfig::cache_dir, nullptr, nullptr},
};

std::string field_value(const RunConfig& config, const FieldDesc& f) {
  switch (f.type) {
    case FieldType::text:
      return config.*(f.text);
    case FieldType::real:
      return format_double(config.*(f.real));
    case FieldType::integer:
      return std::to_string(config.*(f.integer));
  }
  return "";
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(std::string("config: ") + message);
}

}  // namespace

std::string serialize_config(const RunConfig& config) {
  std::string out;
  for (const FieldDesc& f : kFields) {
    out += f.key;
    out += '=';
    out += field_value(config, f);
    out += '\n';
  }
  return out;
}

std::string config_summary_line(const RunConfig& config) {
  std::string out;
  for (const FieldDesc& f : kFields) {
    if (!out.empty()) out += ' ';
    out += f.key;
    out += '=';
    out += field_value(config, f);
  }
  return out;
}

void apply_config_kv(RunConfig& config, const std::string& key,
                     const std::string& value) {
  const std::string k = trim(key);
  for (const FieldDesc& f : kFields) {
    if (k != f.key) continue;
    switch (f.type) {
      case FieldType::text:
        config.*(f.text) = trim(value);
        return;
      case FieldType::real:
        config.*(f.real) = parse_double(k, value);
        return;
      case FieldType::integer:
        config.*(f.integer) = parse_int(k, value);
        return;
    }
  }
  throw std::invalid_argument("config: unknown key '" + k + "'");
}

RunConfig parse_config_text(const std::string& text, const RunConfig& base) {
  RunConfig config = base;
  std::istringstream in(text);
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    const size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " is not key=value: '" + body + "'");
    apply_config_kv(config, body.substr(0, eq), body.substr(eq + 1));
  }
  return config;
}

RunConfig load_config_file(const std::string& path, const RunConfig& base) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("config: cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), base);
}

void validate_config(const RunConfig& config) {
  require(!config.alpha.empty(), "alpha must not be empty");
  require(std::isfinite(config.T) && config.T >= 10.0 && config.T <= 1e9,
          "T must lie in [10, 1e9]");
  require(std::isfinite(config.k) && config.k >= 0.0 && config.k <= 8.0,
          "k must lie in [0, 8]");
  require(config.mode == "smooth" || config.mode == "sharp" ||
              config.mode == "sharp0T" || config.mode == "sharpT2T" ||
              config.mode == "dyadic",
          "mode must be one of smooth, sharp, sharp0T, sharpT2T, dyadic");
  require(config.t_count >= 0 && config.t_count <= 100000000,
          "t_count must lie in [0, 1e8]");
  require(std::isfinite(config.t_min) && std::isfinite(config.t_max),
          "t_min and t_max must be finite");
  if (config.t_count > 0)
    require(config.t_min >= 1.0, "t_min must be >= 1 when points are requested");
  if (config.t_count > 1)
    require(config.t_min <= config.t_max,
            "t_min must not exceed t_max when t_count > 1");
  require(config.n_samples >= 0 && config.n_samples <= 1000000000,
          "n_samples must lie in [0, 1e9]");
  require(std::isfinite(config.step_factor) && config.step_factor > 0.0 &&
              config.step_factor <= 10.0,
          "step_factor must lie in (0, 10]");
  require(std::isfinite(config.C) && config.C > 0.0, "C must be positive");
  require(std::isfinite(config.eps) && config.eps >= 0.0 && config.eps < 1.0,
          "eps must lie in [0, 1)");
  require(std::isfinite(config.delta) && config.delta > 0.0 && config.delta <= 2.0,
          "delta must lie in (0, 2]");
  require(std::isfinite(config.A) && config.A >= 1.0 && config.A <= 12.0,
          "A must lie in [1, 12]");
  require(config.workers >= 1 && config.workers <= 64,
          "workers must lie in [1, 64]");
  require(config.work_budget >= 1, "work_budget must be positive");
}

}  // namespace hzlab
