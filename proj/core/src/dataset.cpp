#include "abssim/dataset.hpp"

#include <algorithm>
#include <numeric>

#include "abssim/errors.hpp"

namespace abssim {

Partition make_partition(int num_samples, int num_workers, std::mt19937_64& rng) {
  if (num_workers < 1) throw InputError("make_partition: need at least one worker");
  if (num_samples < 1) throw InputError("make_partition: empty dataset");
  if (num_samples % num_workers != 0)
    throw InputError("make_partition: worker count " + std::to_string(num_workers) +
                     " does not divide sample count " + std::to_string(num_samples));

  std::vector<int> order(num_samples);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  const int shard_size = num_samples / num_workers;
  Partition part;
  part.shards.resize(num_workers);
  for (int n = 0; n < num_workers; ++n) {
    part.shards[n].assign(order.begin() + n * shard_size,
                          order.begin() + (n + 1) * shard_size);
    std::sort(part.shards[n].begin(), part.shards[n].end());
  }
  return part;
}

}  // namespace abssim
