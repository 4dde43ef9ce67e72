#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abssim/latency.hpp"
#include "abssim/problem.hpp"
#include "abssim/sgd.hpp"
#include "abssim/strategies.hpp"

namespace abssim {

/// Fully validated description of one scenario: problem, cluster, strategy,
/// hyper-parameters, latency model, seeds, outputs.
struct RunConfig {
  std::string scenario;  // names output files; defaults to the strategy kind
  ProblemSpec problem;
  int workers = 10;
  StrategyConfig strategy;
  HyperParams hyper;
  LatencyModel latency;
  std::vector<std::uint64_t> seeds;
  std::string output_dir = "out";
};

/// Parse + validate a JSON config. Unknown keys are rejected; every
/// validation error names the offending key path.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

}  // namespace abssim
