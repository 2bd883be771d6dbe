#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include "hzlab/runconfig.hpp"

using namespace hzlab;

TEST_CASE("defaults validate and serialize with every key present") {
  RunConfig config;
  CHECK_NOTHROW(validate_config(config));
  const std::string text = serialize_config(config);
  for (const char* key :
       {"alpha=", "T=", "k=", "mode=", "t_min=", "t_max=", "t_count=",
        "n_samples=", "seed=", "step_factor=", "C=", "eps=", "delta=", "A=",
        "workers=", "work_budget=", "output=", "cache_dir="}) {
    CAPTURE(key);
    const bool present = text.find(std::string("\n") + key) != std::string::npos ||
                         text.rfind(key, 0) == 0;
    CHECK(present);
  }
  // Parsing the serialization of the defaults reproduces the defaults.
  CHECK(parse_config_text(text) == RunConfig{});
}

TEST_CASE("serialize then parse is the identity on hand-picked configs") {
  RunConfig config;
  config.alpha = "rational:3/8";
  config.T = 12345.678901234567;
  config.k = 1.5;
  config.mode = "sharp";
  config.t_min = 99.25;
  config.t_max = 1e6;
  config.t_count = 4096;
  config.n_samples = 10000;
  config.seed = -987654321;
  config.step_factor = 0.012345678901234567;
  config.C = 2.5e-3;
  config.eps = 0.375;
  config.delta = 1.9;
  config.A = 11.5;
  config.workers = 8;
  config.work_budget = 123456789012345LL;
  config.output = "runs/out file.csv";
  config.cache_dir = "/tmp/hzlab cache";
  CHECK(parse_config_text(serialize_config(config)) == config);
  // The summary line is one line and mentions the distinctive values.
  const std::string line = config_summary_line(config);
  CHECK(line.find('\n') == std::string::npos);
  CHECK(line.find("alpha=rational:3/8") != std::string::npos);
  CHECK(line.find("mode=sharp") != std::string::npos);
}

TEST_CASE("serialize then parse is the identity on randomized configs") {
  std::mt19937_64 rng(20260816);
  auto real_in = [&](double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    // Full-precision doubles: perturb by a random ulp-scale factor so the
    // round-trip has to preserve all 17 digits.
    double v = d(rng);
    v *= 1.0 + std::uniform_real_distribution<double>(-1e-13, 1e-13)(rng);
    if (v < lo) v = lo;
    if (v > hi) v = hi;
    return v;
  };
  const char* alphas[] = {"golden", "sqrt2m1", "rational:7/13", "0.25",
                          "liouville:3,10"};
  const char* modes[] = {"smooth", "sharp"};
  const char* paths[] = {"", "out.csv", "dir/with space/x.json", "a#b"};
  for (int iter = 0; iter < 300; ++iter) {
    RunConfig config;
    config.alpha = alphas[rng() % 5];
    config.T = real_in(10.0, 1e9);
    config.k = real_in(0.0, 8.0);
    config.mode = modes[rng() % 2];
    config.t_min = real_in(1.0, 1e4);
    config.t_max = config.t_min + real_in(0.0, 1e5);
    config.t_count = static_cast<long long>(rng() % 100000000);
    config.n_samples = static_cast<long long>(rng() % 1000000000);
    config.seed = static_cast<long long>(rng());
    config.step_factor = real_in(1e-6, 10.0);
    config.C = real_in(1e-12, 1e6);
    config.eps = real_in(0.0, 0.999);
    config.delta = real_in(1e-6, 2.0);
    config.A = real_in(1.0, 12.0);
    config.workers = 1 + static_cast<long long>(rng() % 64);
    config.work_budget = 1 + static_cast<long long>(rng() % (1LL << 60));
    config.output = paths[rng() % 4];
    config.cache_dir = paths[rng() % 4];
    CAPTURE(iter);
    const RunConfig back = parse_config_text(serialize_config(config));
    CHECK(back == config);
    CHECK_NOTHROW(validate_config(back));
  }
}

TEST_CASE("parsing skips comments and blanks, overrides field by field") {
  const std::string text =
      "# moment run\n"
      "\n"
      "  alpha = sqrt2m1  \n"
      "T=20000\n"
      "   # indented comment\n"
      "mode=sharp\n"
      "seed=42\n";
  const RunConfig config = parse_config_text(text);
  CHECK(config.alpha == "sqrt2m1");
  CHECK(config.T == 20000.0);
  CHECK(config.mode == "sharp");
  CHECK(config.seed == 42);
  // Untouched keys keep their defaults.
  CHECK(config.k == RunConfig{}.k);
  CHECK(config.step_factor == RunConfig{}.step_factor);

  // Later lines override earlier ones; explicit base overrides defaults.
  const RunConfig layered = parse_config_text("seed=7\nseed=9\n", config);
  CHECK(layered.seed == 9);
  CHECK(layered.alpha == "sqrt2m1");

  // apply_config_kv is the flag layer: it overrides parsed values.
  RunConfig flagged = config;
  apply_config_kv(flagged, "T", " 500 ");
  CHECK(flagged.T == 500.0);
}

TEST_CASE("malformed lines and unknown keys are rejected") {
  CHECK_THROWS_AS(parse_config_text("bogus_key=1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("T\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("T=\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("T=12x\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("seed=1.5\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("workers=\n"), std::invalid_argument);
  RunConfig config;
  CHECK_THROWS_AS(apply_config_kv(config, "tcount", "3"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_kv(config, "T", "1e-343341"), std::invalid_argument);
}

TEST_CASE("range validation names the offending knob") {
  auto expect_reject = [](void (*mutate)(RunConfig&)) {
    RunConfig config;
    mutate(config);
    CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
  };
  expect_reject([](RunConfig& c) { c.alpha = ""; });
  expect_reject([](RunConfig& c) { c.T = 9.0; });
  expect_reject([](RunConfig& c) { c.T = 2e9; });
  expect_reject([](RunConfig& c) { c.k = -0.5; });
  expect_reject([](RunConfig& c) { c.k = 9.0; });
  expect_reject([](RunConfig& c) { c.mode = "medium"; });
  expect_reject([](RunConfig& c) { c.t_count = -1; });
  expect_reject([](RunConfig& c) { c.t_min = 0.5; });
  expect_reject([](RunConfig& c) {
    c.t_count = 2;
    c.t_min = 10.0;
    c.t_max = 5.0;
  });
  expect_reject([](RunConfig& c) { c.n_samples = -5; });
  expect_reject([](RunConfig& c) { c.step_factor = 0.0; });
  expect_reject([](RunConfig& c) { c.step_factor = 11.0; });
  expect_reject([](RunConfig& c) { c.C = 0.0; });
  expect_reject([](RunConfig& c) { c.eps = 1.0; });
  expect_reject([](RunConfig& c) { c.eps = -0.1; });
  expect_reject([](RunConfig& c) { c.delta = 0.0; });
  expect_reject([](RunConfig& c) { c.delta = 2.5; });
  expect_reject([](RunConfig& c) { c.A = 0.5; });
  expect_reject([](RunConfig& c) { c.A = 13.0; });
  expect_reject([](RunConfig& c) { c.workers = 0; });
  expect_reject([](RunConfig& c) { c.workers = 65; });
  expect_reject([](RunConfig& c) { c.work_budget = 0; });
  // A t_min below 1 is fine when no points are requested (header-only runs).
  RunConfig headers_only;
  headers_only.t_count = 0;
  headers_only.t_min = 0.5;
  CHECK_NOTHROW(validate_config(headers_only));
  // Every documented mode spelling is accepted.
  for (const char* mode : {"smooth", "sharp", "sharp0T", "sharpT2T", "dyadic"}) {
    RunConfig c;
    c.mode = mode;
    CHECK_NOTHROW(validate_config(c));
  }
}

TEST_CASE("config files load through the same parser") {
  const std::string path = "test_config_roundtrip.cfg";
  RunConfig config;
  config.alpha = "rational:1/3";
  config.T = 777.125;
  config.output = "audit.csv";
  {
    std::ofstream out(path, std::ios::binary);
    out << "# saved by test\n" << serialize_config(config);
  }
  const RunConfig loaded = load_config_file(path);
  std::remove(path.c_str());
  CHECK(loaded == config);
  CHECK_THROWS_AS(load_config_file("does-not-exist.cfg"), std::runtime_error);
}

#include "hzlab/acceptance.hpp"

TEST_CASE("validation growth line echoes the configured shift and delta") {
  RunConfig config;
  config.alpha = "golden";
  config.delta = 0.5;
  CHECK(growth_info_line(config) ==
        "INFO  - growth_check alpha=golden delta=0.5 C=10 -> true");

  // A synthetic shift built to violate the growth condition is flagged as an
  // expected failure rather than an alarm.
  config.alpha = "liouville:3,10";
  config.delta = 0.9;
  const std::string flagged = growth_info_line(config);
  CHECK(flagged.find("alpha=liouville:3,10 delta=0.9") != std::string::npos);
  CHECK(flagged.find("-> false [expected-fail: synthetic shift") !=
        std::string::npos);

  // Terminating expansions have no large denominators to test: vacuous pass.
  config.alpha = "rational:3/8";
  config.delta = 0.5;
  CHECK(growth_info_line(config) ==
        "INFO  - growth_check alpha=rational:3/8 delta=0.5 C=10 -> true");

  // Shift spec errors fold into the line instead of throwing.
  config.alpha = "rational:5/0";
  const std::string broken = growth_info_line(config);
  CHECK(broken.find("error(") != std::string::npos);
}
