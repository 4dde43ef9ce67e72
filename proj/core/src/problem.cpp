#include "abssim/problem.hpp"

#include <cmath>

#include "abssim/errors.hpp"
#include "abssim/logistic.hpp"
#include "abssim/quadratic.hpp"
#include "abssim/tiny_mlp.hpp"

namespace abssim {

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::quadratic: return "quadratic";
    case ProblemKind::logistic: return "logistic";
    case ProblemKind::tiny_mlp: return "tiny-mlp";
  }
  return "?";
}

ProblemKind problem_kind_from_string(const std::string& s) {
  if (s == "quadratic") return ProblemKind::quadratic;
  if (s == "logistic") return ProblemKind::logistic;
  if (s == "tiny-mlp" || s == "tiny_mlp") return ProblemKind::tiny_mlp;
  throw InputError("unknown problem kind: " + s);
}

void Problem::check_dimension(const ModelVector& w) const {
  if (w.size() != dimension())
    throw InputError("model vector has dimension " + std::to_string(w.size()) +
                     ", problem expects " + std::to_string(dimension()));
}

double Problem::full_loss(const ModelVector& w) const {
  check_dimension(w);
  double sum = 0.0;
  const int m = num_samples();
  for (int i = 0; i < m; ++i) sum += sample_loss(w, i);
  const double loss = sum / m;
  if (!std::isfinite(loss)) throw DivergenceError(-1);
  return loss;
}

ModelVector Problem::full_gradient(const ModelVector& w) const {
  check_dimension(w);
  ModelVector acc = ModelVector::Zero(dimension());
  const int m = num_samples();
  const double coeff = 1.0 / m;
  for (int i = 0; i < m; ++i) accumulate_sample_gradient(w, i, coeff, acc);
  return acc;
}

ModelVector Problem::sample_gradient(const ModelVector& w, int sample) const {
  check_dimension(w);
  ModelVector acc = ModelVector::Zero(dimension());
  accumulate_sample_gradient(w, sample, 1.0, acc);
  return acc;
}

double Problem::subset_loss(const ModelVector& w, const std::vector<int>& indices) const {
  check_dimension(w);
  if (indices.empty()) throw InputError("subset_loss: empty index set");
  double sum = 0.0;
  for (int i : indices) sum += sample_loss(w, i);
  return sum / static_cast<double>(indices.size());
}

ModelVector Problem::subset_gradient(const ModelVector& w,
                                     const std::vector<int>& indices) const {
  check_dimension(w);
  if (indices.empty()) throw InputError("subset_gradient: empty index set");
  ModelVector acc = ModelVector::Zero(dimension());
  const double coeff = 1.0 / static_cast<double>(indices.size());
  for (int i : indices) accumulate_sample_gradient(w, i, coeff, acc);
  return acc;
}

std::unique_ptr<Problem> make_problem(const ProblemSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::quadratic: return std::make_unique<QuadraticProblem>(spec);
    case ProblemKind::logistic: return std::make_unique<LogisticProblem>(spec);
    case ProblemKind::tiny_mlp: return std::make_unique<TinyMlpProblem>(spec);
  }
  throw InputError("make_problem: bad kind");
}

double power_iteration_lmax(const Eigen::MatrixXd& mat, double tol, int max_iters) {
  if (mat.rows() != mat.cols() || mat.rows() == 0)
    throw InputError("power_iteration_lmax: need a nonempty square matrix");
  Eigen::VectorXd v = Eigen::VectorXd::Ones(mat.rows());
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXd next = mat * v;
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;  // v in the null space of a PSD matrix
    next /= norm;
    const double next_lambda = next.dot(mat * next);
    if (std::abs(next_lambda - lambda) <= tol * std::max(1.0, std::abs(next_lambda))) {
      return next_lambda;
    }
    lambda = next_lambda;
    v = std::move(next);
  }
  return lambda;
}

}  // namespace abssim
