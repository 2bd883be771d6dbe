#pragma once
// Disk cache for single moment-integral results. The key covers everything
// the value depends on (shift tag, T, k, mode, quadrature step, engine
// version); the stored row freezes the original wall time so that a rerun
// with the same configuration reproduces its report byte for byte.

#include <cstdio>
#include <string>

#include "hzlab/cache.hpp"
#include "hzlab/moments.hpp"

namespace hzlab {

struct CachedMoment {
  MomentEstimate est;
  bool cache_hit = false;
  std::string path;
};

inline CachedMoment cached_moment_integral(const ShiftParameter& alpha, double T,
                                           double k, MomentMode mode,
                                           const QuadratureSpec& spec,
                                           const SmoothWindow* window,
                                           const std::string& cache_dir_override = "") {
  char key[256];
  std::snprintf(key, sizeof key, "moment|v1|%s|%.17g|%.17g|%s|%.17g|%.17g",
                alpha.tag.c_str(), T, k, moment_mode_name(mode), spec.step_factor,
                spec.step_override);
  CachedMoment out;
  out.path = resolve_cache_dir(cache_dir_override) + "/moment_" +
             hex64(fnv1a64(key)) + ".csv";

  if (std::FILE* f = std::fopen(out.path.c_str(), "rb")) {
    char line[512];
    if (std::fgets(line, sizeof line, f) != nullptr && line[0] == '#' &&
        std::fgets(line, sizeof line, f) != nullptr) {
      double value = 0.0, quad_error = 0.0, wall = 0.0;
      long long points = 0;
      if (std::sscanf(line, "%lf,%lld,%lf,%lf", &value, &points, &quad_error,
                      &wall) == 4) {
        out.est.value = value;
        out.est.quad_points = points;
        out.est.quad_error_estimate = quad_error;
        out.est.wall_seconds = wall;
        out.est.k = k;
        out.est.T = T;
        out.est.alpha_tag = alpha.tag;
        out.est.mode = mode;
        out.cache_hit = true;
      }
    }
    std::fclose(f);
    if (out.cache_hit) return out;
  }

  out.est = moment_integral(alpha, T, k, mode, spec, window);
  char row[640];
  std::snprintf(row, sizeof row, "# %s\n%.17g,%lld,%.17g,%.17g\n", key,
                out.est.value, out.est.quad_points, out.est.quad_error_estimate,
                out.est.wall_seconds);
  atomic_write_file(out.path, row);
  return out;
}

}  // namespace hzlab
