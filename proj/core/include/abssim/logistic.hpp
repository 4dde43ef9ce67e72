#pragma once

#include <optional>

#include "abssim/problem.hpp"

namespace abssim {

/// Binary logistic regression with a small ridge term:
///   f(w; (x, y)) = log(1 + exp(-y x.w)) + ridge/2 ||w||^2,  y in {-1, +1}.
/// The ridge keeps the optimum finite even when the sampled data happens to
/// be separable. L <= lmax(X'X/(4M)) + ridge analytically; F* comes from a
/// Nesterov reference optimization run once at construction.
class LogisticProblem : public Problem {
 public:
  static constexpr double kRidge = 1e-3;

  LogisticProblem(Eigen::MatrixXd features, Eigen::VectorXd labels);
  explicit LogisticProblem(const ProblemSpec& spec);

  ProblemKind kind() const override { return ProblemKind::logistic; }
  int dimension() const override { return static_cast<int>(data_.features.cols()); }
  const Dataset& data() const override { return data_; }

  double sample_loss(const ModelVector& w, int sample) const override;
  void accumulate_sample_gradient(const ModelVector& w, int sample, double coeff,
                                  ModelVector& acc) const override;

  double smoothness() const override { return smoothness_; }
  std::optional<double> optimal_loss() const override { return optimal_loss_; }
  std::optional<ModelVector> optimum() const override { return std::nullopt; }
  ModelVector initial_model() const override;

 private:
  void finish_setup();

  Dataset data_;
  double smoothness_ = 0.0;
  double optimal_loss_ = 0.0;
};

}  // namespace abssim
