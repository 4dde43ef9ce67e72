#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abssim {

/// One per-round row of the simulation output. Counter fields are cumulative
/// since the start of the run (including the initial model broadcast);
/// staleness fields describe only the gradients consumed this round.
struct MetricsRecord {
  int round = 0;          // 1-based: global updates completed so far
  double sim_time = 0.0;  // simulated seconds at the K^t-th upload
  double loss = 0.0;      // F(w^round), the post-update global loss
  int k_t = 1;
  double tau_t = 0.0;     // inf for strategies without a staleness bound
  long long uploads = 0;
  long long downloads = 0;
  long long discarded = 0;
  int max_staleness = 0;
  double mean_staleness = 0.0;

  bool operator==(const MetricsRecord&) const = default;
};

/// CSV with header round,sim_time,loss,k_t,tau_t,uploads,downloads,discarded,
/// max_staleness,mean_staleness. Doubles are written shortest-round-trip, so
/// parsing an emitted file reproduces the records exactly.
void write_metrics_csv(std::ostream& out, const std::vector<MetricsRecord>& records);
void write_metrics_csv_file(const std::string& path, const std::vector<MetricsRecord>& records);
std::vector<MetricsRecord> read_metrics_csv(std::istream& in);
std::vector<MetricsRecord> read_metrics_csv_file(const std::string& path);

/// Shortest decimal form that parses back to exactly the same double
/// ("inf"/"nan" spelled out). Shared by the CSV writers and the summaries.
std::string format_double(double v);

}  // namespace abssim
