#pragma once

#include <stdexcept>
#include <string>

namespace abssim {

/// Bad argument to a core operation (dimension mismatch, empty partition, ...).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration file failed to parse or validate. `key_path` names the
/// offending field, e.g. "strategy.k0".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key_path, const std::string& reason)
      : std::runtime_error(key_path.empty() ? reason : key_path + ": " + reason),
        key_path_(std::move(key_path)) {}
  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

/// A model or loss went non-finite. Carries the round at which it happened
/// so sweeps can record partial results instead of dying.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(int round)
      : std::runtime_error("model diverged (non-finite value) at round " +
                           std::to_string(round)),
        round_(round) {}
  int round() const { return round_; }

 private:
  int round_ = -1;
};

}  // namespace abssim
