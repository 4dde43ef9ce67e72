#include "abssim/engine.hpp"

#include <algorithm>
#include <cmath>

#include "abssim/errors.hpp"
#include "abssim/rng.hpp"

namespace abssim {

void force_restart(WorkerState& worker, const ModelVector& new_model, int new_base_round,
                   const SimClock& clock, const LatencyModel& latency, EventQueue& queue) {
  worker.base_model = new_model;
  worker.base_round = new_base_round;
  worker.generation += 1;
  worker.busy_until = clock.now + sample_compute_time(latency, worker.id, worker.latency_rng);
  queue.push({worker.busy_until, worker.id, worker.generation});
}

namespace {

class Simulation {
 public:
  Simulation(const Problem& problem, const HyperParams& hp, const StrategyConfig& strategy_cfg,
             const LatencyModel& latency, int n_workers, std::uint64_t seed,
             const StopRule& stop, const RunOptions& options)
      : problem_(problem),
        hp_(hp),
        latency_(latency),
        stop_(stop),
        options_(options),
        n_workers_(n_workers),
        loss0_(problem.full_loss(problem.initial_model())),
        strategy_(strategy_cfg, n_workers, loss0_) {
    if (n_workers_ < 1) throw InputError("run: need at least one worker");

    auto partition_rng = make_stream(seed, StreamPurpose::partition);
    partition_ = make_partition(problem_.num_samples(), n_workers_, partition_rng);
    if (hp_.batch > static_cast<int>(partition_.shard(0).size()))
      throw InputError("run: batch size exceeds per-worker shard size");

    global_model_ = problem_.initial_model();
    tau_.assign(n_workers_, 0);
    generations_.assign(n_workers_, 0);

    workers_.reserve(n_workers_);
    for (int n = 0; n < n_workers_; ++n) {
      WorkerState w;
      w.id = n;
      w.latency_rng = make_stream(seed, StreamPurpose::latency, n);
      w.batch_rng = make_stream(seed, StreamPurpose::batch, n);
      workers_.push_back(std::move(w));
    }
    // Initial broadcast of w^0: every worker downloads and starts computing.
    for (auto& w : workers_) {
      w.base_model = global_model_;
      w.base_round = 0;
      w.busy_until = sample_compute_time(latency_, w.id, w.latency_rng);
      queue_.push({w.busy_until, w.id, w.generation});
    }
    downloads_ = n_workers_;

    if (options_.record_trace) result_.trace.models.push_back(global_model_);
  }

  RunResult take_result() && { return std::move(result_); }

  void run_all() {
    try {
      while (clock_.round < stop_.max_rounds) {
        const bool hit_target = step_round();
        if (hit_target) {
          result_.reached_target = true;
          break;
        }
      }
    } catch (const DivergenceError& e) {
      result_.diverged = true;
      result_.divergence_round = e.round() >= 0 ? e.round() : clock_.round;
    }
    result_.final_model = global_model_;
    result_.strategy_warnings = strategy_.warning_count();
    result_.abandoned_computations = abandoned_;
    result_.forced_restarts_of_busy = restarts_of_busy_;
  }

 private:
  // Executes round t; returns true when the stop target was reached.
  bool step_round() {
    const int t = clock_.round;
    const RoundDecision decision =
        strategy_.begin_round(t, [&] { return problem_.full_loss(global_model_); });

    // (i) consume completions until K^t distinct workers uploaded this round.
    std::vector<ConsumedUpdate> updates;
    std::vector<int> uploaders;
    updates.reserve(decision.k_t);
    while (static_cast<int>(updates.size()) < decision.k_t) {
      auto ev = queue_.pop_valid(generations_);
      if (!ev) throw InputError("run: event queue exhausted (internal invariant)");
      WorkerState& w = workers_[ev->worker];
      clock_.now = std::max(clock_.now, ev->time);

      LocalSgdResult local =
          local_sgd_steps(problem_, w.base_model, hp_, partition_.shard(w.id), w.batch_rng, t);
      w.last_local_loss = local.last_local_loss;
      ++uploads_;

      ConsumedUpdate u;
      u.accumulated_update = std::move(local.accumulated_update);
      u.staleness = tau_[w.id];
      u.scale = strategy_.scale_for(u.staleness);
      updates.push_back(std::move(u));
      uploaders.push_back(w.id);
      strategy_.observe_loss(local.last_local_loss);
    }

    // (ii) global aggregation.
    global_model_ = aggregate_global(global_model_, updates);
    if (!all_finite(global_model_)) throw DivergenceError(t);

    // (iii) staleness vector update: uploaders download this round.
    update_staleness(tau_, uploaders);

    // (iv)+(v) fresh model to uploaders and over-threshold workers.
    const std::vector<int> restarts = strategy_.restart_set(uploaders, tau_, decision.tau_t);
    for (int id : restarts) {
      const bool was_uploader =
          std::find(uploaders.begin(), uploaders.end(), id) != uploaders.end();
      if (!was_uploader) {
        ++abandoned_;
        ++restarts_of_busy_;
      }
      tau_[id] = 0;
      force_restart(workers_[id], global_model_, t + 1, clock_, latency_, queue_);
      generations_[id] = workers_[id].generation;
      ++downloads_;
    }

    clock_.round = t + 1;

    // (vi) metrics row for this round.
    const double loss = problem_.full_loss(global_model_);
    MetricsRecord rec;
    rec.round = clock_.round;
    rec.sim_time = clock_.now;
    rec.loss = loss;
    rec.k_t = decision.k_t;
    rec.tau_t = decision.tau_t;
    rec.uploads = uploads_;
    rec.downloads = downloads_;
    rec.discarded = abandoned_;
    int max_tau = 0;
    double sum_tau = 0.0;
    for (const auto& u : updates) {
      max_tau = std::max(max_tau, u.staleness);
      sum_tau += u.staleness;
    }
    rec.max_staleness = max_tau;
    rec.mean_staleness = sum_tau / static_cast<double>(updates.size());
    result_.records.push_back(rec);

    if (options_.record_trace) {
      RoundTrace rt;
      rt.k_t = decision.k_t;
      rt.tau_t = decision.tau_t;
      rt.end_time = clock_.now;
      rt.uploader_ids = uploaders;
      for (const auto& u : updates) rt.consumed_staleness.push_back(u.staleness);
      rt.post_restart_max_tau = *std::max_element(tau_.begin(), tau_.end());
      result_.trace.rounds.push_back(std::move(rt));
      result_.trace.models.push_back(global_model_);
    }

    return stop_.target_loss && loss <= *stop_.target_loss;
  }

  const Problem& problem_;
  HyperParams hp_;
  LatencyModel latency_;
  StopRule stop_;
  RunOptions options_;
  int n_workers_;
  double loss0_;
  Strategy strategy_;

  Partition partition_;
  ModelVector global_model_;
  StalenessVector tau_;
  std::vector<int> generations_;
  std::vector<WorkerState> workers_;
  EventQueue queue_;
  SimClock clock_;

  long long uploads_ = 0;
  long long downloads_ = 0;
  long long abandoned_ = 0;
  long long restarts_of_busy_ = 0;

  RunResult result_;
};

}  // namespace

RunResult run(const Problem& problem, const HyperParams& hp, const StrategyConfig& strategy,
              const LatencyModel& latency, int n_workers, std::uint64_t seed,
              const StopRule& stop, const RunOptions& options) {
  Simulation sim(problem, hp, strategy, latency, n_workers, seed, stop, options);
  sim.run_all();
  return std::move(sim).take_result();
}

}  // namespace abssim
