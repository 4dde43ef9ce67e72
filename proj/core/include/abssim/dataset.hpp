#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <vector>

#include "abssim/vec.hpp"

namespace abssim {

/// M samples (feature row + scalar target). Targets are real values for
/// regression problems and +/-1 labels for the logistic problem.
struct Dataset {
  Eigen::MatrixXd features;  // M x input_dim
  Eigen::VectorXd targets;   // M

  int size() const { return static_cast<int>(features.rows()); }
  int input_dim() const { return static_cast<int>(features.cols()); }
};

/// Per-worker index sets over a dataset: pairwise disjoint, equal size M/N,
/// union covering 0..M-1.
struct Partition {
  std::vector<std::vector<int>> shards;  // one index set per worker

  int workers() const { return static_cast<int>(shards.size()); }
  const std::vector<int>& shard(int worker) const { return shards[worker]; }
};

/// Permutation-based split of M sample indices into N equal shards.
/// Throws InputError unless N divides M.
Partition make_partition(int num_samples, int num_workers, std::mt19937_64& rng);

}  // namespace abssim
