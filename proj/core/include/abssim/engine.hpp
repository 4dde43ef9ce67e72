#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "abssim/dataset.hpp"
#include "abssim/event_queue.hpp"
#include "abssim/latency.hpp"
#include "abssim/metrics.hpp"
#include "abssim/problem.hpp"
#include "abssim/sgd.hpp"
#include "abssim/strategies.hpp"
#include "abssim/vec.hpp"

namespace abssim {

/// One simulated worker. A worker is always computing: it snapshots the
/// global model when it downloads (base_model / base_round), owns private
/// rng streams, and bumps `generation` whenever a restart abandons the
/// computation in flight.
struct WorkerState {
  int id = 0;
  ModelVector base_model;
  int base_round = 0;        // round whose global model it computes against
  double busy_until = 0.0;
  int generation = 0;
  double last_local_loss = 0.0;
  std::mt19937_64 latency_rng;
  std::mt19937_64 batch_rng;
};

struct SimClock {
  double now = 0.0;  // simulated seconds, non-decreasing
  int round = 0;     // increments by exactly 1 per global update
};

/// Abandon whatever the worker is computing, hand it `new_model`, and
/// schedule a fresh completion from `now`. The event queued under the old
/// generation is left in place; its stale tag makes it a no-op on pop.
void force_restart(WorkerState& worker, const ModelVector& new_model, int new_base_round,
                   const SimClock& clock, const LatencyModel& latency, EventQueue& queue);

struct StopRule {
  int max_rounds = 300;
  std::optional<double> target_loss;  // stop once post-update loss <= target
};

struct RunOptions {
  bool record_trace = false;
};

/// Optional per-round trace for the analysis module and invariant tests.
struct RoundTrace {
  int k_t = 1;
  double tau_t = 0.0;
  double end_time = 0.0;
  std::vector<int> uploader_ids;        // in consumption order
  std::vector<int> consumed_staleness;  // tau_k per consumed gradient
  int post_restart_max_tau = 0;
};

struct RunTrace {
  std::vector<ModelVector> models;  // w^0 .. w^T
  std::vector<RoundTrace> rounds;
};

struct RunResult {
  std::vector<MetricsRecord> records;
  ModelVector final_model;
  bool diverged = false;
  int divergence_round = -1;
  bool reached_target = false;
  int strategy_warnings = 0;
  long long abandoned_computations = 0;  // forced restarts of busy workers
  long long forced_restarts_of_busy = 0; // identical by construction; kept as a cross-check
  RunTrace trace;                        // empty unless options.record_trace
};

/// Deterministic discrete-event simulation of one PS and N workers.
/// Per round: wait for the K^t fastest uploads, aggregate, update staleness,
/// push the fresh model to the strategy's restart set, repeat until the stop
/// rule fires. Identical (inputs, seed) give bit-identical results.
RunResult run(const Problem& problem, const HyperParams& hp, const StrategyConfig& strategy,
              const LatencyModel& latency, int n_workers, std::uint64_t seed,
              const StopRule& stop, const RunOptions& options = {});

}  // namespace abssim
