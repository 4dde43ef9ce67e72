#include "abssim/tiny_mlp.hpp"

#include <cmath>

#include "abssim/errors.hpp"
#include "abssim/rng.hpp"

namespace abssim {
namespace {

// Offsets of (W, b) blocks for layer l inside the flat parameter vector.
struct LayerView {
  int w_offset;
  int b_offset;
  int in;
  int out;
};

std::vector<LayerView> layer_views(const std::vector<int>& sizes) {
  std::vector<LayerView> views;
  int offset = 0;
  for (size_t l = 0; l + 1 < sizes.size(); ++l) {
    LayerView v{offset, offset + sizes[l] * sizes[l + 1], sizes[l], sizes[l + 1]};
    offset = v.b_offset + v.out;
    views.push_back(v);
  }
  return views;
}

}  // namespace

TinyMlpProblem::TinyMlpProblem(Eigen::MatrixXd features, Eigen::VectorXd targets,
                               std::vector<int> hidden_widths, std::uint64_t init_seed)
    : init_seed_(init_seed) {
  if (features.rows() != targets.size() || features.rows() == 0)
    throw InputError("TinyMlpProblem: features/targets shape mismatch");
  data_.features = std::move(features);
  data_.targets = std::move(targets);
  layer_sizes_.push_back(data_.input_dim());
  for (int h : hidden_widths) {
    if (h < 1) throw InputError("TinyMlpProblem: hidden widths must be positive");
    layer_sizes_.push_back(h);
  }
  layer_sizes_.push_back(1);
  init_shapes(data_.input_dim());
  smoothness_bound_ =
      data_.features.squaredNorm() / static_cast<double>(data_.size()) + 1.0;
}

TinyMlpProblem::TinyMlpProblem(const ProblemSpec& spec) : init_seed_(spec.data_seed) {
  const int d = spec.dimension;
  const int m = spec.num_samples;
  if (d < 1 || m < 1) throw InputError("TinyMlpProblem: dimension and samples must be positive");
  if (spec.hidden_widths.empty())
    throw InputError("TinyMlpProblem: need at least one hidden layer width");

  layer_sizes_.push_back(d);
  for (int h : spec.hidden_widths) {
    if (h < 1) throw InputError("TinyMlpProblem: hidden widths must be positive");
    layer_sizes_.push_back(h);
  }
  layer_sizes_.push_back(1);
  init_shapes(d);

  auto rng = make_stream(spec.data_seed, StreamPurpose::data);
  std::normal_distribution<double> gauss(0.0, 1.0);

  data_.features.resize(m, d);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < d; ++j) data_.features(i, j) = gauss(rng);

  // Targets from a fixed random teacher of the same shape.
  ModelVector teacher(param_count_);
  const auto views = layer_views(layer_sizes_);
  int p = 0;
  for (const auto& v : views) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(v.in));
    for (int k = 0; k < v.in * v.out; ++k) teacher[p++] = gauss(rng) * scale;
    for (int k = 0; k < v.out; ++k) teacher[p++] = 0.1 * gauss(rng);
  }
  data_.targets.resize(m);
  for (int i = 0; i < m; ++i) data_.targets[i] = forward(teacher, data_.features.row(i));
  // Curvature scale estimate from the data second moment; informational only.
  smoothness_bound_ = data_.features.squaredNorm() / static_cast<double>(m) + 1.0;
}

void TinyMlpProblem::init_shapes(int /*input_dim*/) {
  param_count_ = 0;
  for (size_t l = 0; l + 1 < layer_sizes_.size(); ++l)
    param_count_ += layer_sizes_[l] * layer_sizes_[l + 1] + layer_sizes_[l + 1];
}

double TinyMlpProblem::forward(const ModelVector& w, const Eigen::VectorXd& x) const {
  const auto views = layer_views(layer_sizes_);
  Eigen::VectorXd act = x;
  for (size_t l = 0; l < views.size(); ++l) {
    const auto& v = views[l];
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        W(w.data() + v.w_offset, v.out, v.in);
    Eigen::Map<const Eigen::VectorXd> b(w.data() + v.b_offset, v.out);
    Eigen::VectorXd z = W * act + b;
    if (l + 1 < views.size()) {
      act = z.array().tanh();
    } else {
      act = z;
    }
  }
  return act[0];
}

double TinyMlpProblem::sample_loss(const ModelVector& w, int sample) const {
  const double r = forward(w, data_.features.row(sample)) - data_.targets[sample];
  return 0.5 * r * r;
}

void TinyMlpProblem::accumulate_sample_gradient(const ModelVector& w, int sample,
                                                double coeff, ModelVector& acc) const {
  const auto views = layer_views(layer_sizes_);
  const int depth = static_cast<int>(views.size());

  // Forward pass keeping activations.
  std::vector<Eigen::VectorXd> activations(depth + 1);
  activations[0] = data_.features.row(sample);
  for (int l = 0; l < depth; ++l) {
    const auto& v = views[l];
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        W(w.data() + v.w_offset, v.out, v.in);
    Eigen::Map<const Eigen::VectorXd> b(w.data() + v.b_offset, v.out);
    Eigen::VectorXd z = W * activations[l] + b;
    activations[l + 1] = (l + 1 < depth) ? z.array().tanh().matrix() : z;
  }

  // Backward pass; delta starts as the residual of the squared loss.
  Eigen::VectorXd delta(1);
  delta[0] = activations[depth][0] - data_.targets[sample];
  for (int l = depth - 1; l >= 0; --l) {
    const auto& v = views[l];
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        W(w.data() + v.w_offset, v.out, v.in);
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        dW(acc.data() + v.w_offset, v.out, v.in);
    Eigen::Map<Eigen::VectorXd> db(acc.data() + v.b_offset, v.out);

    dW.noalias() += coeff * delta * activations[l].transpose();
    db.noalias() += coeff * delta;
    if (l > 0) {
      Eigen::VectorXd back = W.transpose() * delta;
      // tanh'(z) = 1 - tanh(z)^2, and activations[l] already holds tanh(z).
      delta = back.array() * (1.0 - activations[l].array().square());
    }
  }
}

ModelVector TinyMlpProblem::initial_model() const {
  auto rng = make_stream(init_seed_, StreamPurpose::init);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ModelVector w(param_count_);
  const auto views = layer_views(layer_sizes_);
  int p = 0;
  for (const auto& v : views) {
    const double scale = 0.5 / std::sqrt(static_cast<double>(v.in));
    for (int k = 0; k < v.in * v.out; ++k) w[p++] = gauss(rng) * scale;
    for (int k = 0; k < v.out; ++k) w[p++] = 0.0;
  }
  return w;
}

}  // namespace abssim
