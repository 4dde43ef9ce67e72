#include "abssim/sgd.hpp"

#include "abssim/errors.hpp"

namespace abssim {

std::vector<int> sample_batch_indices(const std::vector<int>& shard, int batch,
                                      std::mt19937_64& rng) {
  if (shard.empty()) throw InputError("sample_batch_indices: empty partition shard");
  if (batch < 1) throw InputError("sample_batch_indices: batch size must be >= 1");
  if (batch > static_cast<int>(shard.size()))
    throw InputError("sample_batch_indices: batch size " + std::to_string(batch) +
                     " exceeds shard size " + std::to_string(shard.size()));

  // Full batch is the whole shard, in order, with no draws consumed.
  if (batch == static_cast<int>(shard.size())) return shard;

  std::vector<int> indices(batch);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(shard.size()) - 1);
  for (int b = 0; b < batch; ++b) indices[b] = shard[pick(rng)];
  return indices;
}

ModelVector gradient_at_indices(const Problem& problem, const ModelVector& w,
                                const std::vector<int>& indices) {
  if (indices.empty()) throw InputError("gradient_at_indices: empty index set");
  ModelVector acc = ModelVector::Zero(problem.dimension());
  const double coeff = 1.0 / static_cast<double>(indices.size());
  for (int i : indices) problem.accumulate_sample_gradient(w, i, coeff, acc);
  return acc;
}

ModelVector batch_gradient(const Problem& problem, const ModelVector& w,
                           const std::vector<int>& shard, int batch,
                           std::mt19937_64& rng) {
  return gradient_at_indices(problem, w, sample_batch_indices(shard, batch, rng));
}

LocalSgdResult local_sgd_steps(const Problem& problem, const ModelVector& w_start,
                               const HyperParams& hp, const std::vector<int>& shard,
                               std::mt19937_64& rng, int round) {
  if (hp.local_steps < 1) throw InputError("local_sgd_steps: need at least one local step");

  LocalSgdResult res;
  res.end_model = w_start;
  std::vector<int> indices;
  for (int u = 0; u < hp.local_steps; ++u) {
    indices = sample_batch_indices(shard, hp.batch, rng);
    if (u == hp.local_steps - 1)
      res.last_local_loss = problem.subset_loss(res.end_model, indices);
    ModelVector g = gradient_at_indices(problem, res.end_model, indices);
    res.end_model.noalias() -= hp.eta * g;
  }
  if (!all_finite(res.end_model)) throw DivergenceError(round);
  res.accumulated_update = w_start - res.end_model;
  return res;
}

}  // namespace abssim
