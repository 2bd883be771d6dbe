// Standalone gate runner: executes the twelve validation checks with the
// default configuration (cache directory resolved from HZLAB_CACHE_DIR when
// set) and prints the deterministic report. Exit status 0 iff every check
// passes, so the test driver can gate on it directly.
#include <cstdio>

#include "hzlab/acceptance.hpp"
#include "hzlab/runconfig.hpp"

int main() {
  hzlab::RunConfig config;
  try {
    hzlab::validate_config(config);
    const hzlab::ValidationRun run = hzlab::run_validation(config);
    std::fputs(run.report.c_str(), stdout);
    return run.all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 1;
  }
}
