#pragma once

#include <random>
#include <vector>

namespace abssim {

/// Compute-time model for one full local round (all U steps). Times are
/// gamma-distributed with common shape p and per-worker scale
/// theta_n = scale * multiplier_n; multipliers default to 1 and model
/// persistent stragglers. `fixed_times`, when non-empty, replaces the gamma
/// draw with a deterministic per-worker constant (test and debugging hook).
struct LatencyModel {
  double shape = 2.0;
  double scale = 1.0;
  std::vector<double> multipliers;   // empty = homogeneous
  std::vector<double> fixed_times;   // empty = stochastic

  bool deterministic() const { return !fixed_times.empty(); }
};

/// One draw of worker n's compute time, strictly positive seconds.
/// Throws ConfigError on non-positive shape/scale/multiplier.
double sample_compute_time(const LatencyModel& latency, int worker,
                           std::mt19937_64& rng);

}  // namespace abssim
