#pragma once

#include <cstdint>
#include <random>

namespace abssim {

// Named purposes for rng substreams. Every stochastic component of a run
// draws from its own stream so that draw order in one component never
// shifts another: restarting worker 3 more often must not change the
// mini-batches worker 5 samples.
enum class StreamPurpose : std::uint64_t {
  data = 1,       // dataset generation (keyed by problem seed)
  init = 2,       // model initialisation (keyed by problem seed)
  partition = 3,  // per-run data partitioning
  latency = 4,    // per-worker compute-time draws
  batch = 5,      // per-worker mini-batch index sampling
  mc = 6,         // Monte Carlo loops in the analysis module
  misc = 7,
};

// splitmix64 finalizer; decorrelates (seed, purpose, id) triples.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, StreamPurpose purpose,
                                    std::uint64_t id = 0) {
  std::uint64_t s = mix64(seed);
  s = mix64(s ^ static_cast<std::uint64_t>(purpose));
  s = mix64(s ^ id);
  return s;
}

/// Deterministic child stream for (seed, purpose, id).
inline std::mt19937_64 make_stream(std::uint64_t seed, StreamPurpose purpose,
                                   std::uint64_t id = 0) {
  return std::mt19937_64(substream_seed(seed, purpose, id));
}

}  // namespace abssim
