#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abssim/analysis.hpp"
#include "abssim/config.hpp"
#include "abssim/engine.hpp"

namespace abssim {

/// Raised by run_scenario when every seed of a scenario diverged (CLI exit 3).
class AllSeedsDiverged : public std::runtime_error {
 public:
  explicit AllSeedsDiverged(const std::string& scenario)
      : std::runtime_error("all seeds diverged for scenario '" + scenario + "'") {}
};

/// Raised by normalize_times when the baseline is absent or useless (exit 4).
class BaselineMissing : public std::runtime_error {
 public:
  explicit BaselineMissing(const std::string& what) : std::runtime_error(what) {}
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  bool diverged = false;
  bool reached_target = false;
  double time_to_target = 0.0;        // linear interpolation; NaN if never reached
  long long uploads_to_target = -1;   // counters at the first round with loss <= target
  long long downloads_to_target = -1;
  long long comm_to_target = -1;      // uploads + downloads
  double final_loss = 0.0;
  int rounds = 0;
  double total_sim_time = 0.0;
  long long total_uploads = 0;
  long long total_downloads = 0;
  long long total_discarded = 0;
};

/// Per-seed theory-check outcome for the run summary.
struct TheorySeedOutcome {
  std::uint64_t seed = 0;
  double gamma = 0.0;
  double bound = 0.0;
  double empirical_avg_sq_grad = 0.0;  // (1/T) sum_t ||grad F(w^t)||^2
  bool bound_holds = false;
};

struct TheoryReport {
  TheoryConstants constants;  // gamma field holds the max over seeds
  double eta = 0.0;
  std::optional<CorollaryResult> corollary;  // absent when sigma2 == 0
  std::vector<TheorySeedOutcome> per_seed;
  bool bound_holds_all_seeds = false;
  StatCheck lemma1;
  StatCheck lemma2;
  SignificanceReport significance;
  double significance_s_percent = 1.0;
};

struct ScenarioSummary {
  std::string scenario;
  int reached_count = 0;
  int diverged_count = 0;
  double avg_time_to_target = 0.0;  // over seeds that reached; NaN if none
  double avg_comm_to_target = 0.0;
  double avg_final_loss = 0.0;      // over surviving seeds
  std::vector<SeedOutcome> per_seed;
  std::optional<TheoryReport> theory;
};

struct ScenarioOptions {
  bool with_theory = false;
  bool write_files = true;  // metrics_<scenario>_<seed>.csv + summary_<scenario>.json
};

/// Runs the scenario once per seed, writes per-seed metrics CSVs and the
/// summary JSON, and returns the summary. Diverged seeds are recorded and
/// excluded from the averages; throws AllSeedsDiverged if nothing survived.
ScenarioSummary run_scenario(const RunConfig& config, const ScenarioOptions& options = {});

/// Divides every time-to-target by the baseline's seed-averaged value.
/// Throws BaselineMissing if the baseline scenario is absent or never
/// reached its target.
std::vector<ScenarioSummary> normalize_times(std::vector<ScenarioSummary> summaries,
                                             const std::string& baseline_scenario);

struct SweepCell {
  int k0 = 0;
  double a = 0.0;
  bool failed = false;        // every seed diverged or the run errored
  std::string error;
  ScenarioSummary summary;    // valid when !failed
};

struct SweepResult {
  std::vector<SweepCell> cells;
};

/// One run_scenario per (K^0, a) grid point; failures are recorded per cell
/// and the sweep continues. Writes sweep_table.csv ranked by time-to-target
/// with a communication rank column alongside.
SweepResult sweep(const RunConfig& base, const std::vector<int>& k0_grid,
                  const std::vector<double>& a_grid, const ScenarioOptions& options = {});

/// summary_<scenario>.json serialization (used by the report subcommand).
std::string summary_to_json(const ScenarioSummary& summary);
ScenarioSummary summary_from_json(const std::string& text);
ScenarioSummary read_summary_file(const std::string& path);

/// Interpolated simulated time at which the loss series first crosses
/// `target`, with (time 0, loss0) as the leading bracket. NaN if never.
double time_to_target_interpolated(double loss0, const std::vector<MetricsRecord>& records,
                                   double target);

void write_sweep_table_csv(const std::string& path, const SweepResult& result);

}  // namespace abssim
