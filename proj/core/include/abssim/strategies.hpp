#pragma once

#include <functional>
#include <string>
#include <vector>

#include "abssim/vec.hpp"

namespace abssim {

/// PS-side staleness bookkeeping: tau[n] counts the consecutive global rounds
/// since worker n last downloaded the model.
using StalenessVector = std::vector<int>;

enum class StrategyKind {
  local_sgd,   // K = N, synchronous local SGD
  k_sync,      // K fastest, the rest are cancelled each round
  k_async,     // K fastest, the rest keep computing (stale uploads later)
  asgd,        // k_async with K = 1
  adasync,     // K grows with training progress
  sa_adasync,  // adasync with staleness-aware step scaling
  abs,         // adasync plus the adaptive staleness bound
};

std::string to_string(StrategyKind kind);
StrategyKind strategy_kind_from_string(const std::string& s);

enum class LossEstimateMode { ema, exact };

struct StrategyConfig {
  StrategyKind kind = StrategyKind::abs;
  int k0 = 1;                  // initial worker count K^0
  double a = 0.0;              // ABS staleness-threshold offset; +inf disables the bound
  LossEstimateMode loss_mode = LossEstimateMode::ema;
  int exact_period = 10;       // rounds between full-loss evaluations in exact mode
  int k_recompute_period = 1;  // rounds between K^t updates; 0 pins K^t = K^0

  bool adaptive_k() const {
    return (kind == StrategyKind::adasync || kind == StrategyKind::sa_adasync ||
            kind == StrategyKind::abs) &&
           k_recompute_period > 0;
  }
};

/// Everything the PS decided for one round.
struct RoundDecision {
  int k_t = 1;          // workers to wait for
  double tau_t = 0.0;   // staleness threshold (inf when the strategy has none)
};

/// tau_n := 0 for downloaders, tau_n + 1 otherwise.
void update_staleness(StalenessVector& tau, const std::vector<int>& downloaded);

/// Adaptive staleness threshold: max(1, N/K^t + a). Real-valued by design;
/// the discard test compares integer tau_n against it strictly.
double abs_threshold(int n_workers, int k_t, double a);

/// Progress-driven worker count: round-half-up of K^0 sqrt(loss_0/loss_t),
/// clamped to [prev_k, N] so the realized sequence is non-decreasing.
/// Non-positive loss estimates fall back to prev_k and bump warn_count.
int adaptive_k(int k0, double loss_0, double loss_t, int n_workers, int prev_k,
               int& warn_count);

/// Staleness-aware step scale 1/max(1, tau): fresh gradients unpenalized,
/// stale ones damped linearly in their delay.
double sa_scale(int staleness);

struct ConsumedUpdate {
  ModelVector accumulated_update;  // w_start - w_end from the worker, eta included
  int staleness = 0;
  double scale = 1.0;
};

/// Global step: w - (1/K) sum_k scale_k * update_k.
ModelVector aggregate_global(const ModelVector& w, const std::vector<ConsumedUpdate>& updates);

/// Workers that receive the fresh model this round. ABS adds every worker
/// whose (already updated) staleness exceeds tau_t; the synchronous kinds
/// restart the whole cluster; the async baselines restart only uploaders.
std::vector<int> select_restarts(StrategyKind kind, const std::vector<int>& uploaders,
                                 const StalenessVector& tau, double tau_t);

/// Per-run PS decision state: loss estimation, K^t schedule, tau^t.
class Strategy {
 public:
  Strategy(const StrategyConfig& config, int n_workers, double loss0);

  /// Freeze K^t and tau^t for round t. `exact_loss` supplies F(w^t) on
  /// demand (exact mode only calls it every exact_period rounds).
  RoundDecision begin_round(int round, const std::function<double()>& exact_loss);

  /// Worker-reported last mini-batch loss, fed to the EMA estimate.
  void observe_loss(double reported_loss);

  double scale_for(int staleness) const;
  std::vector<int> restart_set(const std::vector<int>& uploaders,
                               const StalenessVector& tau, double tau_t) const;

  const StrategyConfig& config() const { return config_; }
  double loss_estimate() const;
  int warning_count() const { return warn_count_; }

 private:
  int fixed_k() const;

  StrategyConfig config_;
  int n_workers_ = 1;
  double loss0_ = 1.0;
  int prev_k_ = 1;
  int warn_count_ = 0;
  // EMA state
  bool has_observation_ = false;
  double ema_ = 0.0;
  // exact-mode state
  double exact_estimate_ = 0.0;
  int last_exact_round_ = -1;
};

}  // namespace abssim
