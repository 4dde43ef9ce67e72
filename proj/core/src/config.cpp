#include "abssim/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "abssim/errors.hpp"

namespace abssim {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ConfigError(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
  }
}

template <typename T>
T get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<T>();
}

int get_positive_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  const int v = j.get<int>();
  if (v < 1) throw ConfigError(path, "must be >= 1");
  return v;
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

// `a` may be a number or the strings "inf"/"-inf" (JSON has no infinity).
double get_a_value(const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ConfigError(path, "expected a number or \"inf\"/\"-inf\"");
  }
  return get_number<double>(j, path);
}

ProblemSpec parse_problem(const json& j) {
  require_object(j, "problem");
  reject_unknown_keys(j,
                      {"kind", "dimension", "samples", "seed", "condition_number",
                       "label_noise", "hidden_widths"},
                      "problem");
  ProblemSpec spec;
  if (j.contains("kind")) {
    try {
      spec.kind = problem_kind_from_string(get_string(j["kind"], "problem.kind"));
    } catch (const InputError& e) {
      throw ConfigError("problem.kind", e.what());
    }
  }
  if (j.contains("dimension"))
    spec.dimension = get_positive_int(j["dimension"], "problem.dimension");
  if (j.contains("samples"))
    spec.num_samples = get_positive_int(j["samples"], "problem.samples");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw ConfigError("problem.seed", "expected an integer");
    spec.data_seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("condition_number")) {
    spec.condition_number = get_number<double>(j["condition_number"], "problem.condition_number");
    if (spec.condition_number < 1.0) throw ConfigError("problem.condition_number", "must be >= 1");
  }
  if (j.contains("label_noise")) {
    spec.label_noise = get_number<double>(j["label_noise"], "problem.label_noise");
    if (spec.label_noise < 0.0) throw ConfigError("problem.label_noise", "must be >= 0");
  }
  if (j.contains("hidden_widths")) {
    if (!j["hidden_widths"].is_array() || j["hidden_widths"].empty())
      throw ConfigError("problem.hidden_widths", "expected a non-empty array");
    spec.hidden_widths.clear();
    for (size_t i = 0; i < j["hidden_widths"].size(); ++i)
      spec.hidden_widths.push_back(
          get_positive_int(j["hidden_widths"][i], "problem.hidden_widths"));
  }
  return spec;
}

StrategyConfig parse_strategy(const json& j, int workers) {
  require_object(j, "strategy");
  reject_unknown_keys(
      j, {"kind", "k0", "a", "loss_mode", "exact_period", "k_recompute_period"}, "strategy");
  if (!j.contains("kind")) throw ConfigError("strategy.kind", "required");
  StrategyConfig cfg;
  try {
    cfg.kind = strategy_kind_from_string(get_string(j["kind"], "strategy.kind"));
  } catch (const InputError& e) {
    throw ConfigError("strategy.kind", e.what());
  }

  if (j.contains("k0")) {
    cfg.k0 = get_positive_int(j["k0"], "strategy.k0");
  } else if (cfg.kind == StrategyKind::local_sgd) {
    cfg.k0 = workers;
  } else if (cfg.kind == StrategyKind::asgd) {
    cfg.k0 = 1;
  } else {
    throw ConfigError("strategy.k0", "required for kind '" + to_string(cfg.kind) + "'");
  }
  if (cfg.k0 > workers) throw ConfigError("strategy.k0", "must not exceed workers");
  if (cfg.kind == StrategyKind::asgd && cfg.k0 != 1)
    throw ConfigError("strategy.k0", "asgd waits for exactly one worker");

  if (cfg.kind == StrategyKind::abs) {
    if (!j.contains("a")) throw ConfigError("strategy.a", "required for kind 'abs'");
    cfg.a = get_a_value(j["a"], "strategy.a");
    if (std::isnan(cfg.a)) throw ConfigError("strategy.a", "must not be NaN");
  } else if (j.contains("a")) {
    throw ConfigError("strategy.a", "only valid for kind 'abs'");
  }

  if (j.contains("loss_mode")) {
    const auto mode = get_string(j["loss_mode"], "strategy.loss_mode");
    if (mode == "ema") cfg.loss_mode = LossEstimateMode::ema;
    else if (mode == "exact") cfg.loss_mode = LossEstimateMode::exact;
    else throw ConfigError("strategy.loss_mode", "expected \"ema\" or \"exact\"");
  }
  if (j.contains("exact_period"))
    cfg.exact_period = get_positive_int(j["exact_period"], "strategy.exact_period");
  if (j.contains("k_recompute_period")) {
    if (!j["k_recompute_period"].is_number_integer())
      throw ConfigError("strategy.k_recompute_period", "expected an integer");
    cfg.k_recompute_period = j["k_recompute_period"].get<int>();
    if (cfg.k_recompute_period < 0)
      throw ConfigError("strategy.k_recompute_period", "must be >= 0 (0 pins K^t = K^0)");
  }
  return cfg;
}

HyperParams parse_hyper(const json& j) {
  require_object(j, "hyper");
  reject_unknown_keys(j, {"eta", "batch", "local_steps", "max_rounds", "target_loss"},
                      "hyper");
  HyperParams hp;
  if (j.contains("eta")) {
    hp.eta = get_number<double>(j["eta"], "hyper.eta");
    if (hp.eta <= 0.0) throw ConfigError("hyper.eta", "must be > 0");
  }
  if (j.contains("batch")) hp.batch = get_positive_int(j["batch"], "hyper.batch");
  if (j.contains("local_steps"))
    hp.local_steps = get_positive_int(j["local_steps"], "hyper.local_steps");
  if (j.contains("max_rounds"))
    hp.max_rounds = get_positive_int(j["max_rounds"], "hyper.max_rounds");
  if (j.contains("target_loss")) {
    hp.target_loss = get_number<double>(j["target_loss"], "hyper.target_loss");
    if (hp.target_loss <= 0.0) throw ConfigError("hyper.target_loss", "must be > 0");
  }
  return hp;
}

LatencyModel parse_latency(const json& j, int workers) {
  require_object(j, "latency");
  reject_unknown_keys(j, {"shape", "scale", "multipliers", "fixed_times"}, "latency");
  LatencyModel lat;
  if (j.contains("shape")) {
    lat.shape = get_number<double>(j["shape"], "latency.shape");
    if (lat.shape <= 0.0) throw ConfigError("latency.shape", "must be > 0");
  }
  if (j.contains("scale")) {
    lat.scale = get_number<double>(j["scale"], "latency.scale");
    if (lat.scale <= 0.0) throw ConfigError("latency.scale", "must be > 0");
  }
  auto parse_list = [&](const char* key, std::vector<double>& out) {
    if (!j.contains(key)) return;
    const std::string path = std::string("latency.") + key;
    if (!j[key].is_array()) throw ConfigError(path, "expected an array");
    for (const auto& e : j[key]) {
      const double v = get_number<double>(e, path);
      if (v <= 0.0) throw ConfigError(path, "entries must be > 0");
      out.push_back(v);
    }
    if (static_cast<int>(out.size()) != workers)
      throw ConfigError(path, "needs exactly one entry per worker");
  };
  parse_list("multipliers", lat.multipliers);
  parse_list("fixed_times", lat.fixed_times);
  return lat;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("parse error: ") + e.what());
  }
  require_object(doc, "");
  reject_unknown_keys(doc,
                      {"scenario", "problem", "workers", "strategy", "hyper", "latency",
                       "seeds", "output_dir"},
                      "");

  RunConfig cfg;
  if (!doc.contains("problem")) throw ConfigError("problem", "required");
  cfg.problem = parse_problem(doc["problem"]);

  if (!doc.contains("workers")) throw ConfigError("workers", "required");
  cfg.workers = get_positive_int(doc["workers"], "workers");

  if (!doc.contains("strategy")) throw ConfigError("strategy", "required");
  cfg.strategy = parse_strategy(doc["strategy"], cfg.workers);

  cfg.hyper = doc.contains("hyper") ? parse_hyper(doc["hyper"]) : HyperParams{};
  cfg.latency = doc.contains("latency") ? parse_latency(doc["latency"], cfg.workers)
                                        : LatencyModel{};

  if (!doc.contains("seeds")) throw ConfigError("seeds", "required");
  if (!doc["seeds"].is_array() || doc["seeds"].empty())
    throw ConfigError("seeds", "expected a non-empty array");
  for (const auto& s : doc["seeds"]) {
    if (!s.is_number_integer() && !s.is_number_unsigned())
      throw ConfigError("seeds", "expected integers");
    cfg.seeds.push_back(s.get<std::uint64_t>());
  }

  if (doc.contains("output_dir")) cfg.output_dir = get_string(doc["output_dir"], "output_dir");
  cfg.scenario = doc.contains("scenario") ? get_string(doc["scenario"], "scenario")
                                          : to_string(cfg.strategy.kind);
  if (cfg.scenario.empty()) throw ConfigError("scenario", "must not be empty");

  // Cross-field checks.
  if (cfg.problem.num_samples % cfg.workers != 0)
    throw ConfigError("workers", "must divide problem.samples for partitioning");
  if (cfg.hyper.batch > cfg.problem.num_samples / cfg.workers)
    throw ConfigError("hyper.batch", "exceeds the per-worker shard size");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace abssim
