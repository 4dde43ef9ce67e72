#include "abssim/quadratic.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "abssim/errors.hpp"
#include "abssim/rng.hpp"

namespace abssim {

QuadraticProblem::QuadraticProblem(Eigen::MatrixXd features, Eigen::VectorXd targets) {
  if (features.rows() != targets.size() || features.rows() == 0)
    throw InputError("QuadraticProblem: features/targets shape mismatch");
  data_.features = std::move(features);
  data_.targets = std::move(targets);
  finish_setup();
}

QuadraticProblem::QuadraticProblem(const ProblemSpec& spec) {
  const int d = spec.dimension;
  const int m = spec.num_samples;
  if (d < 1 || m < 1) throw InputError("QuadraticProblem: dimension and samples must be positive");
  if (spec.condition_number < 1.0)
    throw InputError("QuadraticProblem: condition number must be >= 1");

  auto rng = make_stream(spec.data_seed, StreamPurpose::data);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Per-coordinate scales spread geometrically over [1/sqrt(kappa), 1];
  // the empirical Hessian then has condition number near `kappa`.
  Eigen::VectorXd scales(d);
  for (int j = 0; j < d; ++j) {
    const double frac = (d == 1) ? 1.0 : static_cast<double>(j) / (d - 1);
    scales[j] = std::pow(spec.condition_number, -0.5 * (1.0 - frac));
  }

  data_.features.resize(m, d);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < d; ++j) data_.features(i, j) = gauss(rng) * scales[j];

  ModelVector w_true(d);
  for (int j = 0; j < d; ++j) w_true[j] = gauss(rng);

  data_.targets = data_.features * w_true;
  if (spec.label_noise > 0.0) {
    for (int i = 0; i < m; ++i) data_.targets[i] += spec.label_noise * gauss(rng);
  }
  finish_setup();
}

void QuadraticProblem::finish_setup() {
  const int m = data_.size();
  hessian_ = data_.features.transpose() * data_.features / static_cast<double>(m);
  linear_ = data_.features.transpose() * data_.targets / static_cast<double>(m);
  smoothness_ = power_iteration_lmax(hessian_, 1e-12);
  optimum_vec_ = hessian_.ldlt().solve(linear_);
  optimum_ = optimum_vec_;
  optimal_loss_ = full_loss(optimum_vec_);
}

double QuadraticProblem::sample_loss(const ModelVector& w, int sample) const {
  const double r = data_.features.row(sample).dot(w) - data_.targets[sample];
  return 0.5 * r * r;
}

void QuadraticProblem::accumulate_sample_gradient(const ModelVector& w, int sample,
                                                  double coeff, ModelVector& acc) const {
  const double r = data_.features.row(sample).dot(w) - data_.targets[sample];
  acc.noalias() += (coeff * r) * data_.features.row(sample).transpose();
}

ModelVector QuadraticProblem::closed_form_gradient(const ModelVector& w) const {
  return hessian_ * w - linear_;
}

ModelVector QuadraticProblem::initial_model() const {
  return ModelVector::Zero(dimension());
}

}  // namespace abssim
