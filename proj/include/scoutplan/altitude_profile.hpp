#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "scoutplan/error.hpp"

namespace scoutplan {

struct AltitudeConfig {
  double h = 35.0;      // optimal scouting height
  double c_z = 1.0;     // max per-step height change
  double z_start = 0.0;
  double z_end = 0.0;
  double z_max = 100.0;

  void validate() const {
    if (!(c_z > 0.0) || !std::isfinite(c_z)) throw std::invalid_argument("c_z must be > 0");
    if (!(z_max >= 0.0) || !std::isfinite(z_max)) throw std::invalid_argument("z_max must be >= 0");
    if (!(z_start >= 0.0 && z_start <= z_max))
      throw std::invalid_argument("z_start must lie in [0, z_max]");
    if (!(z_end >= 0.0 && z_end <= z_max)) throw std::invalid_argument("z_end must lie in [0, z_max]");
    if (!(h >= 0.0 && h <= z_max)) throw std::invalid_argument("h must lie in [0, z_max]");
  }
};

struct AltitudeProfile {
  std::vector<double> heights;
};

// Per-waypoint reachable height interval implied by the slope cap, the pinned
// endpoint heights, and the [0, z_max] box.
struct Envelope {
  std::vector<double> lower;
  std::vector<double> upper;
};

inline Envelope reachable_envelope(int n, const AltitudeConfig& cfg) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  cfg.validate();
  if (std::abs(cfg.z_end - cfg.z_start) > cfg.c_z * (n - 1))
    throw Error(ErrorCode::Infeasible,
                "endpoint height change " + std::to_string(std::abs(cfg.z_end - cfg.z_start)) +
                    " exceeds c_z*(n-1) = " + std::to_string(cfg.c_z * (n - 1)));
  Envelope env;
  env.lower.resize(n);
  env.upper.resize(n);
  for (int t = 0; t < n; ++t) {
    const double from_start = cfg.c_z * t;
    const double from_end = cfg.c_z * (n - 1 - t);
    env.lower[t] = std::max({cfg.z_start - from_start, cfg.z_end - from_end, 0.0});
    env.upper[t] = std::min({cfg.z_start + from_start, cfg.z_end + from_end, cfg.z_max});
    if (env.lower[t] > env.upper[t])
      throw Error(ErrorCode::Infeasible, "empty reachable interval at waypoint " + std::to_string(t));
  }
  return env;
}

// Closed-form minimizer of sum (z_t - h)^2 over the slope/endpoint/box
// polytope: clamp h into the reachable envelope coordinatewise. Both envelope
// bounds are c_z-Lipschitz in t, so the clamped profile keeps the slope cap,
// and each coordinate attains its interval optimum, so the profile is the
// global minimizer.
inline AltitudeProfile solve_heights(int n, const AltitudeConfig& cfg) {
  const Envelope env = reachable_envelope(n, cfg);
  AltitudeProfile profile;
  profile.heights.resize(n);
  for (int t = 0; t < n; ++t)
    profile.heights[t] = std::clamp(cfg.h, env.lower[t], env.upper[t]);
  return profile;
}

// Same convex program solved by cyclic coordinate descent with the endpoints
// held fixed, starting from the linear endpoint interpolation (feasible
// whenever the instance is). Serves as an independent cross-check of
// solve_heights.
inline AltitudeProfile solve_heights_iterative(int n, const AltitudeConfig& cfg, double tol = 1e-9,
                                               int max_sweeps = 100000) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be >= 1");
  reachable_envelope(n, cfg);  // feasibility gate

  AltitudeProfile profile;
  profile.heights.resize(n);
  for (int t = 0; t < n; ++t)
    profile.heights[t] = cfg.z_start + (cfg.z_end - cfg.z_start) * t / (n - 1);
  profile.heights[0] = cfg.z_start;
  profile.heights[n - 1] = cfg.z_end;

  auto& z = profile.heights;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (int t = 1; t + 1 < n; ++t) {
      const double lo = std::max({z[t - 1] - cfg.c_z, z[t + 1] - cfg.c_z, 0.0});
      const double hi = std::min({z[t - 1] + cfg.c_z, z[t + 1] + cfg.c_z, cfg.z_max});
      const double zn = std::clamp(cfg.h, lo, hi);
      max_change = std::max(max_change, std::abs(zn - z[t]));
      z[t] = zn;
    }
    if (max_change < tol) return profile;
  }
  throw Error(ErrorCode::MaxSweepsExceeded,
              "coordinate descent did not converge within " + std::to_string(max_sweeps) +
                  " sweeps");
}

}  // namespace scoutplan
