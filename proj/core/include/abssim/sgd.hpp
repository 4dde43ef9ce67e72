#pragma once

#include <random>
#include <vector>

#include "abssim/problem.hpp"
#include "abssim/vec.hpp"

namespace abssim {

struct HyperParams {
  double eta = 0.1;      // step size
  int batch = 32;        // mini-batch size B
  int local_steps = 10;  // local updates U per round
  int max_rounds = 300;  // T
  double target_loss = -1.0;  // stop rule target; <= 0 means "run all rounds"

  bool has_target() const { return target_loss > 0.0; }
};

/// B sample indices drawn uniformly with replacement from the shard.
/// B == shard size short-circuits to the whole shard in order (exact
/// full-batch gradient, no draws consumed). Throws InputError if the shard is
/// empty or B exceeds it.
std::vector<int> sample_batch_indices(const std::vector<int>& shard, int batch,
                                      std::mt19937_64& rng);

/// Mini-batch gradient (1/B) sum_b grad f(w; xi_b) over indices sampled from
/// the worker's shard.
ModelVector batch_gradient(const Problem& problem, const ModelVector& w,
                           const std::vector<int>& shard, int batch,
                           std::mt19937_64& rng);

/// Gradient averaged over an explicit index multiset (the deterministic inner
/// kernel of batch_gradient).
ModelVector gradient_at_indices(const Problem& problem, const ModelVector& w,
                                const std::vector<int>& indices);

struct LocalSgdResult {
  ModelVector end_model;
  ModelVector accumulated_update;  // w_start - w_end = eta * sum of batch gradients
  double last_local_loss = 0.0;    // final mini-batch loss, the PS loss report
};

/// U steps of w <- w - eta * batch_gradient(w) on the worker's shard.
/// Throws DivergenceError (carrying `round`) if the model goes non-finite.
LocalSgdResult local_sgd_steps(const Problem& problem, const ModelVector& w_start,
                               const HyperParams& hp, const std::vector<int>& shard,
                               std::mt19937_64& rng, int round = -1);

}  // namespace abssim
