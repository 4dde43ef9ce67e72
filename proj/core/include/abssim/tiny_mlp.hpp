#pragma once

#include <optional>
#include <vector>

#include "abssim/problem.hpp"

namespace abssim {

/// Fully connected tanh network with linear scalar output and squared loss,
/// f(w; (x, y)) = 1/2 (net_w(x) - y)^2. Parameters live flattened in the
/// ModelVector (per layer: weight matrix row-major, then bias). Targets come
/// from a fixed random teacher network of the same shape. Non-convex; no
/// analytic L or F*, which is why the theory checks run on the other kinds.
class TinyMlpProblem : public Problem {
 public:
  TinyMlpProblem(Eigen::MatrixXd features, Eigen::VectorXd targets,
                 std::vector<int> hidden_widths, std::uint64_t init_seed);
  explicit TinyMlpProblem(const ProblemSpec& spec);

  ProblemKind kind() const override { return ProblemKind::tiny_mlp; }
  int dimension() const override { return param_count_; }
  const Dataset& data() const override { return data_; }

  double sample_loss(const ModelVector& w, int sample) const override;
  void accumulate_sample_gradient(const ModelVector& w, int sample, double coeff,
                                  ModelVector& acc) const override;

  // No analytic smoothness constant; a conservative data-scale bound only.
  double smoothness() const override { return smoothness_bound_; }
  std::optional<double> optimal_loss() const override { return std::nullopt; }
  std::optional<ModelVector> optimum() const override { return std::nullopt; }
  ModelVector initial_model() const override;

  const std::vector<int>& layer_sizes() const { return layer_sizes_; }
  double forward(const ModelVector& w, const Eigen::VectorXd& x) const;

 private:
  void init_shapes(int input_dim);

  Dataset data_;
  std::vector<int> layer_sizes_;  // input, hidden..., 1
  int param_count_ = 0;
  double smoothness_bound_ = 0.0;
  std::uint64_t init_seed_ = 0;
};

}  // namespace abssim
