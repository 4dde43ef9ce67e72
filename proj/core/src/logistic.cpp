#include "abssim/logistic.hpp"

#include <cmath>

#include "abssim/errors.hpp"
#include "abssim/rng.hpp"

namespace abssim {
namespace {

// log(1 + exp(z)) without overflow for large |z|.
double log1p_exp(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

// Logistic sigmoid 1/(1+exp(-z)).
double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

LogisticProblem::LogisticProblem(Eigen::MatrixXd features, Eigen::VectorXd labels) {
  if (features.rows() != labels.size() || features.rows() == 0)
    throw InputError("LogisticProblem: features/labels shape mismatch");
  for (int i = 0; i < labels.size(); ++i)
    if (labels[i] != 1.0 && labels[i] != -1.0)
      throw InputError("LogisticProblem: labels must be +1 or -1");
  data_.features = std::move(features);
  data_.targets = std::move(labels);
  finish_setup();
}

LogisticProblem::LogisticProblem(const ProblemSpec& spec) {
  const int d = spec.dimension;
  const int m = spec.num_samples;
  if (d < 1 || m < 1) throw InputError("LogisticProblem: dimension and samples must be positive");
  if (spec.label_noise < 0.0 || spec.label_noise >= 0.5)
    throw InputError("LogisticProblem: label noise must lie in [0, 0.5)");

  auto rng = make_stream(spec.data_seed, StreamPurpose::data);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  data_.features.resize(m, d);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < d; ++j) data_.features(i, j) = gauss(rng);

  ModelVector w_true(d);
  for (int j = 0; j < d; ++j) w_true[j] = gauss(rng);

  data_.targets.resize(m);
  for (int i = 0; i < m; ++i) {
    double label = data_.features.row(i).dot(w_true) >= 0.0 ? 1.0 : -1.0;
    if (unif(rng) < spec.label_noise) label = -label;
    data_.targets[i] = label;
  }
  finish_setup();
}

void LogisticProblem::finish_setup() {
  const int m = data_.size();
  // Hessian of the data term is bounded by X'X/(4M).
  Eigen::MatrixXd bound = data_.features.transpose() * data_.features / (4.0 * m);
  smoothness_ = power_iteration_lmax(bound, 1e-12) + kRidge;

  // Reference optimum via Nesterov's method for strongly convex smooth F
  // (ridge gives mu >= kRidge). Run until the gradient is negligible.
  const double mu = kRidge;
  const double L = smoothness_;
  const double step = 1.0 / L;
  const double q = std::sqrt(mu / L);
  const double momentum = (1.0 - q) / (1.0 + q);
  ModelVector w = ModelVector::Zero(dimension());
  ModelVector y = w;
  for (int it = 0; it < 200000; ++it) {
    ModelVector g = full_gradient(y);
    if (g.norm() < 1e-12) break;
    ModelVector w_next = y - step * g;
    y = w_next + momentum * (w_next - w);
    w = std::move(w_next);
  }
  optimal_loss_ = full_loss(w);
}

double LogisticProblem::sample_loss(const ModelVector& w, int sample) const {
  const double margin = data_.targets[sample] * data_.features.row(sample).dot(w);
  return log1p_exp(-margin) + 0.5 * kRidge * w.squaredNorm();
}

void LogisticProblem::accumulate_sample_gradient(const ModelVector& w, int sample,
                                                 double coeff, ModelVector& acc) const {
  const double y = data_.targets[sample];
  const double margin = y * data_.features.row(sample).dot(w);
  const double slope = -y * sigmoid(-margin);
  acc.noalias() += (coeff * slope) * data_.features.row(sample).transpose();
  acc.noalias() += (coeff * kRidge) * w;
}

ModelVector LogisticProblem::initial_model() const {
  return ModelVector::Zero(dimension());
}

}  // namespace abssim
