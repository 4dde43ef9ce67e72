#pragma once

#include <optional>

#include "abssim/problem.hpp"

namespace abssim {

/// Least-squares problem: f(w; (x, y)) = 1/2 (x.w - y)^2, so
/// F(w) = 1/2 w'Aw - b'w + c with A = X'X/M, b = X'y/M. The Hessian A, the
/// optimum (solved from the normal equations), F* and L = lmax(A) are all
/// exact, which is what the theory checks lean on.
class QuadraticProblem : public Problem {
 public:
  /// Build from explicit data (used directly by tests).
  QuadraticProblem(Eigen::MatrixXd features, Eigen::VectorXd targets);
  /// Build from a generator spec: per-coordinate feature scales spread over
  /// [1/sqrt(kappa), 1], targets X w_true + label_noise * gaussian.
  explicit QuadraticProblem(const ProblemSpec& spec);

  ProblemKind kind() const override { return ProblemKind::quadratic; }
  int dimension() const override { return static_cast<int>(data_.features.cols()); }
  const Dataset& data() const override { return data_; }

  double sample_loss(const ModelVector& w, int sample) const override;
  void accumulate_sample_gradient(const ModelVector& w, int sample, double coeff,
                                  ModelVector& acc) const override;

  double smoothness() const override { return smoothness_; }
  std::optional<double> optimal_loss() const override { return optimal_loss_; }
  std::optional<ModelVector> optimum() const override { return optimum_; }
  ModelVector initial_model() const override;

  const Eigen::MatrixXd& hessian() const { return hessian_; }
  /// Closed-form full gradient A w - b (tested against the sample mean).
  ModelVector closed_form_gradient(const ModelVector& w) const;

 private:
  void finish_setup();

  Dataset data_;
  Eigen::MatrixXd hessian_;   // A = X'X / M
  Eigen::VectorXd linear_;    // b = X'y / M
  ModelVector optimum_vec_;
  double optimal_loss_ = 0.0;
  double smoothness_ = 0.0;
  std::optional<ModelVector> optimum_;
};

}  // namespace abssim
