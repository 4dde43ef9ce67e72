#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "abssim/dataset.hpp"
#include "abssim/vec.hpp"

namespace abssim {

enum class ProblemKind { quadratic, logistic, tiny_mlp };

std::string to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& s);

/// Construction recipe for a synthetic optimization problem. The dataset is
/// generated deterministically from `data_seed`, independent of any run seed,
/// so every run of a scenario sees the same data.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::quadratic;
  int dimension = 16;       // model dimension for quadratic/logistic; input dim for tiny-mlp
  int num_samples = 640;
  std::uint64_t data_seed = 1;
  double condition_number = 4.0;     // quadratic: spread of feature scales
  double label_noise = 0.05;         // logistic: flip probability; quadratic: target noise stddev
  std::vector<int> hidden_widths = {8};  // tiny-mlp only
};

/// A loss F(w) = (1/M) sum_m f(w; xi_m) with per-sample gradient oracles.
/// Implementations are immutable after construction and safe to share across
/// concurrently running simulations.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual ProblemKind kind() const = 0;
  /// Model dimension d.
  virtual int dimension() const = 0;
  virtual const Dataset& data() const = 0;
  int num_samples() const { return data().size(); }

  virtual double sample_loss(const ModelVector& w, int sample) const = 0;
  /// acc += coeff * grad f(w; xi_sample). The accumulate form keeps the hot
  /// path allocation-free.
  virtual void accumulate_sample_gradient(const ModelVector& w, int sample,
                                          double coeff, ModelVector& acc) const = 0;

  /// (1/M) sum over the full dataset. Throws InputError on dimension mismatch
  /// and DivergenceError if the result is non-finite.
  double full_loss(const ModelVector& w) const;
  /// Exact gradient of full_loss: mean of per-sample gradients in index order.
  ModelVector full_gradient(const ModelVector& w) const;
  ModelVector sample_gradient(const ModelVector& w, int sample) const;

  /// Mean loss / gradient over an explicit index set (a worker's shard view).
  double subset_loss(const ModelVector& w, const std::vector<int>& indices) const;
  ModelVector subset_gradient(const ModelVector& w, const std::vector<int>& indices) const;

  /// Smoothness constant L of F. Analytic (power iteration on the exact
  /// Hessian or an upper-bounding matrix) for quadratic and logistic.
  virtual double smoothness() const = 0;
  /// Minimal loss F*, where the problem can provide it. Quadratic: exact via
  /// the normal equations. Logistic: long reference optimization, computed
  /// once at construction. Tiny-mlp: not available.
  virtual std::optional<double> optimal_loss() const = 0;
  /// Arg-min of F where analytically available (quadratic only).
  virtual std::optional<ModelVector> optimum() const = 0;

  /// Deterministic starting point w^0 for runs on this problem.
  virtual ModelVector initial_model() const = 0;

 protected:
  void check_dimension(const ModelVector& w) const;
};

std::unique_ptr<Problem> make_problem(const ProblemSpec& spec);

/// Largest eigenvalue of a symmetric PSD matrix by plain power iteration,
/// converged to `tol` on the Rayleigh quotient.
double power_iteration_lmax(const Eigen::MatrixXd& mat, double tol = 1e-12,
                            int max_iters = 100000);

}  // namespace abssim
