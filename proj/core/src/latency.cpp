#include "abssim/latency.hpp"

#include <limits>

#include "abssim/errors.hpp"

namespace abssim {

double sample_compute_time(const LatencyModel& latency, int worker,
                           std::mt19937_64& rng) {
  if (latency.deterministic()) {
    if (worker < 0 || static_cast<size_t>(worker) >= latency.fixed_times.size())
      throw ConfigError("latency.fixed_times", "needs one entry per worker");
    const double t = latency.fixed_times[worker];
    if (t <= 0.0) throw ConfigError("latency.fixed_times", "times must be positive");
    return t;
  }
  if (latency.shape <= 0.0) throw ConfigError("latency.shape", "must be positive");
  if (latency.scale <= 0.0) throw ConfigError("latency.scale", "must be positive");
  double theta = latency.scale;
  if (!latency.multipliers.empty()) {
    if (worker < 0 || static_cast<size_t>(worker) >= latency.multipliers.size())
      throw ConfigError("latency.multipliers", "needs one entry per worker");
    if (latency.multipliers[worker] <= 0.0)
      throw ConfigError("latency.multipliers", "must be positive");
    theta *= latency.multipliers[worker];
  }
  std::gamma_distribution<double> gamma(latency.shape, theta);
  double t = gamma(rng);
  // Zero has measure zero but can surface from underflow; keep times strictly
  // positive so the clock always advances.
  while (t <= 0.0) t = std::numeric_limits<double>::min() + gamma(rng);
  return t;
}

}  // namespace abssim
