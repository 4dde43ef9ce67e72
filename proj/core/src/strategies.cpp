#include "abssim/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abssim/errors.hpp"

namespace abssim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::local_sgd: return "local_sgd";
    case StrategyKind::k_sync: return "k_sync";
    case StrategyKind::k_async: return "k_async";
    case StrategyKind::asgd: return "asgd";
    case StrategyKind::adasync: return "adasync";
    case StrategyKind::sa_adasync: return "sa_adasync";
    case StrategyKind::abs: return "abs";
  }
  return "?";
}

StrategyKind strategy_kind_from_string(const std::string& s) {
  if (s == "local_sgd") return StrategyKind::local_sgd;
  if (s == "k_sync") return StrategyKind::k_sync;
  if (s == "k_async") return StrategyKind::k_async;
  if (s == "asgd") return StrategyKind::asgd;
  if (s == "adasync") return StrategyKind::adasync;
  if (s == "sa_adasync") return StrategyKind::sa_adasync;
  if (s == "abs") return StrategyKind::abs;
  throw InputError("unknown strategy kind: " + s);
}

void update_staleness(StalenessVector& tau, const std::vector<int>& downloaded) {
  std::vector<bool> got(tau.size(), false);
  for (int n : downloaded) {
    if (n < 0 || static_cast<size_t>(n) >= tau.size())
      throw InputError("update_staleness: worker id out of range");
    got[n] = true;
  }
  for (size_t n = 0; n < tau.size(); ++n) tau[n] = got[n] ? 0 : tau[n] + 1;
}

double abs_threshold(int n_workers, int k_t, double a) {
  if (k_t < 1) throw InputError("abs_threshold: K^t must be >= 1");
  return std::max(1.0, static_cast<double>(n_workers) / k_t + a);
}

int adaptive_k(int k0, double loss_0, double loss_t, int n_workers, int prev_k,
               int& warn_count) {
  if (loss_0 <= 0.0 || loss_t <= 0.0 || !std::isfinite(loss_t)) {
    ++warn_count;
    return prev_k;
  }
  const double raw = k0 * std::sqrt(loss_0 / loss_t);
  int k = static_cast<int>(std::floor(raw + 0.5));  // round half up
  k = std::max(k, prev_k);
  k = std::max(k, k0);
  k = std::min(k, n_workers);
  return k;
}

double sa_scale(int staleness) {
  if (staleness < 0) throw InputError("sa_scale: negative staleness");
  return 1.0 / std::max(1, staleness);
}

ModelVector aggregate_global(const ModelVector& w, const std::vector<ConsumedUpdate>& updates) {
  if (updates.empty()) throw InputError("aggregate_global: no updates");
  ModelVector next = w;
  const double inv_k = 1.0 / static_cast<double>(updates.size());
  for (const auto& u : updates) {
    if (u.accumulated_update.size() != w.size())
      throw InputError("aggregate_global: update dimension mismatch");
    next.noalias() -= (inv_k * u.scale) * u.accumulated_update;
  }
  return next;
}

std::vector<int> select_restarts(StrategyKind kind, const std::vector<int>& uploaders,
                                 const StalenessVector& tau, double tau_t) {
  if (uploaders.empty()) throw InputError("select_restarts: no uploaders");
  switch (kind) {
    case StrategyKind::local_sgd:
    case StrategyKind::k_sync: {
      // Synchronous barrier: everyone gets the new model.
      std::vector<int> all(tau.size());
      for (size_t n = 0; n < tau.size(); ++n) all[n] = static_cast<int>(n);
      return all;
    }
    case StrategyKind::k_async:
    case StrategyKind::asgd:
    case StrategyKind::adasync:
    case StrategyKind::sa_adasync:
      return uploaders;
    case StrategyKind::abs: {
      std::vector<int> set = uploaders;
      for (size_t n = 0; n < tau.size(); ++n) {
        const int id = static_cast<int>(n);
        if (tau[n] > tau_t && std::find(set.begin(), set.end(), id) == set.end())
          set.push_back(id);
      }
      std::sort(set.begin(), set.end());
      return set;
    }
  }
  throw InputError("select_restarts: bad strategy kind");
}

Strategy::Strategy(const StrategyConfig& config, int n_workers, double loss0)
    : config_(config), n_workers_(n_workers), loss0_(loss0) {
  if (n_workers_ < 1) throw InputError("Strategy: need at least one worker");
  if (config_.k0 < 1 || config_.k0 > n_workers_)
    throw InputError("Strategy: K^0 must lie in [1, N]");
  if (config_.kind == StrategyKind::abs && std::isnan(config_.a))
    throw InputError("Strategy: ABS requires parameter a");
  prev_k_ = fixed_k();
}

int Strategy::fixed_k() const {
  switch (config_.kind) {
    case StrategyKind::local_sgd: return n_workers_;
    case StrategyKind::asgd: return 1;
    default: return config_.k0;
  }
}

double Strategy::loss_estimate() const {
  if (config_.loss_mode == LossEstimateMode::ema)
    return has_observation_ ? ema_ : loss0_;
  return last_exact_round_ >= 0 ? exact_estimate_ : loss0_;
}

RoundDecision Strategy::begin_round(int round, const std::function<double()>& exact_loss) {
  RoundDecision d;
  if (config_.adaptive_k()) {
    if (round % config_.k_recompute_period == 0) {
      if (config_.loss_mode == LossEstimateMode::exact &&
          (last_exact_round_ < 0 || round - last_exact_round_ >= config_.exact_period)) {
        exact_estimate_ = exact_loss();
        last_exact_round_ = round;
      }
      prev_k_ = adaptive_k(config_.k0, loss0_, loss_estimate(), n_workers_, prev_k_,
                           warn_count_);
    }
    d.k_t = prev_k_;
  } else {
    d.k_t = fixed_k();
  }
  d.tau_t = config_.kind == StrategyKind::abs ? abs_threshold(n_workers_, d.k_t, config_.a)
                                              : kInf;
  return d;
}

void Strategy::observe_loss(double reported_loss) {
  if (!std::isfinite(reported_loss)) return;
  if (!has_observation_) {
    ema_ = reported_loss;
    has_observation_ = true;
  } else {
    ema_ = 0.9 * ema_ + 0.1 * reported_loss;
  }
}

double Strategy::scale_for(int staleness) const {
  return config_.kind == StrategyKind::sa_adasync ? sa_scale(staleness) : 1.0;
}

std::vector<int> Strategy::restart_set(const std::vector<int>& uploaders,
                                       const StalenessVector& tau, double tau_t) const {
  return select_restarts(config_.kind, uploaders, tau, tau_t);
}

}  // namespace abssim
