#include "abssim/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "abssim/errors.hpp"
#include "abssim/sgd.hpp"

namespace abssim {

namespace {

struct MeanVar {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
};

MeanVar mean_and_se(const std::vector<double>& xs) {
  const auto n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var = xs.size() > 1 ? var / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

std::vector<int> whole_dataset_shard(const Problem& problem) {
  std::vector<int> shard(problem.num_samples());
  for (int i = 0; i < problem.num_samples(); ++i) shard[i] = i;
  return shard;
}

}  // namespace

double theorem1_bound(const TheoryConstants& c, double eta) {
  if (c.gamma >= 1.0 || c.gamma < 0.0)
    throw InputError("theorem1_bound: gamma must lie in [0, 1)");
  if (eta <= 0.0) throw InputError("theorem1_bound: eta must be positive");
  const double one_minus_gamma = 1.0 - c.gamma;
  const double term1 = 2.0 * (c.F0 - c.Fstar) / (c.T * eta * c.U * one_minus_gamma);
  const double term2 = c.L * eta * c.sigma2 / (c.k0 * c.m * one_minus_gamma);
  return term1 + term2;
}

CorollaryResult corollary1_lr(const TheoryConstants& c) {
  if (c.sigma2 <= 0.0)
    throw InputError("corollary1_lr: undefined for zero gradient variance");
  if (c.T < 1) throw InputError("corollary1_lr: T must be >= 1");
  CorollaryResult r;
  r.eta = std::sqrt(2.0 * (c.F0 - c.Fstar) * c.k0 * c.m / (c.T * c.U * c.L * c.sigma2));
  // 1/K^t is largest at K^t = K^0, so the condition is strictest there.
  r.side_condition_limit = 1.0 / (c.L * (c.M_G / (c.k0 * c.m) + 1.0 / c.k0));
  r.side_condition_ok = r.eta <= r.side_condition_limit;
  return r;
}

TheoryConstants estimate_constants(const Problem& problem,
                                   std::span<const ModelVector> w_samples,
                                   std::mt19937_64& rng, const ConstantsOptions& options) {
  if (problem.kind() == ProblemKind::tiny_mlp)
    throw InputError("estimate_constants: needs analytic L (quadratic or logistic)");
  if (w_samples.empty()) throw InputError("estimate_constants: no sample points");
  const auto maybe_fstar = problem.optimal_loss();
  if (!maybe_fstar) throw InputError("estimate_constants: problem has no reference F*");

  TheoryConstants c;
  c.L = problem.smoothness();
  c.Fstar = *maybe_fstar;
  c.m = options.batch;

  const std::vector<int> shard = whole_dataset_shard(problem);

  // Empirical batch-gradient variance at each point, against ||grad F||^2.
  std::vector<double> xs, ys;
  double max_x = 0.0;
  for (const auto& w : w_samples) {
    const ModelVector full = problem.full_gradient(w);
    const double x = full.squaredNorm();
    double var = 0.0;
    for (int trial = 0; trial < options.draws_per_point; ++trial) {
      const ModelVector g = batch_gradient(problem, w, shard, options.batch, rng);
      var += (g - full).squaredNorm();
    }
    var /= options.draws_per_point;
    xs.push_back(x);
    ys.push_back(var);
    max_x = std::max(max_x, x);
  }

  // Least squares for y = alpha + beta x; Assumption-style constants are
  // sigma2 = alpha m, M_G = beta m, clamped to be non-negative.
  const auto n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  if (sy == 0.0 && sx == 0.0)
    throw InputError("estimate_constants: degenerate regression (all gradients zero)");
  const double denom = n * sxx - sx * sx;
  double alpha, beta;
  if (denom <= 1e-30 * std::max(1.0, sxx)) {
    // All probe points share one gradient norm; attribute everything to sigma2.
    alpha = sy / n;
    beta = 0.0;
  } else {
    beta = (n * sxy - sx * sy) / denom;
    alpha = (sy - beta * sx) / n;
  }
  if (alpha < 0.0) alpha = 0.0;
  if (beta < 0.0) beta = 0.0;
  c.sigma2 = alpha * c.m;
  c.M_G = beta * c.m;
  return c;
}

double estimate_gamma(const Problem& problem, std::span<const ModelVector> models,
                      std::span<const std::pair<int, int>> consumed) {
  double gamma = 0.0;
  for (const auto& [round, staleness] : consumed) {
    if (staleness <= 0) continue;
    if (round < 0 || static_cast<size_t>(round) >= models.size()) continue;
    const int delayed = round - staleness;
    if (delayed < 0) continue;
    const ModelVector g_now = problem.full_gradient(models[round]);
    const double denom = g_now.squaredNorm();
    if (denom <= 0.0) continue;
    const ModelVector g_old = problem.full_gradient(models[delayed]);
    gamma = std::max(gamma, (g_now - g_old).squaredNorm() / denom);
  }
  return std::clamp(gamma, 0.0, 0.99);
}

StatCheck lemma1_check(const Problem& problem, const ModelVector& w,
                       const ModelVector& w_delayed, int batch, int trials,
                       std::mt19937_64& rng) {
  const std::vector<int> shard = whole_dataset_shard(problem);
  const ModelVector g_w = problem.full_gradient(w);
  const ModelVector g_delayed = problem.full_gradient(w_delayed);
  const double delayed_norm2 = g_delayed.squaredNorm();
  const double gap_norm2 = (g_w - g_delayed).squaredNorm();

  // Left side and the E||v||^2 part of the right side are estimated from
  // independent draw sets.
  std::vector<double> lhs_samples(trials), v_norm_samples(trials);
  for (int i = 0; i < trials; ++i)
    lhs_samples[i] = (batch_gradient(problem, w_delayed, shard, batch, rng) - g_w).squaredNorm();
  for (int i = 0; i < trials; ++i)
    v_norm_samples[i] = batch_gradient(problem, w_delayed, shard, batch, rng).squaredNorm();

  const MeanVar lhs = mean_and_se(lhs_samples);
  const MeanVar vn = mean_and_se(v_norm_samples);

  StatCheck check;
  check.lhs = lhs.mean;
  check.rhs = vn.mean - delayed_norm2 + gap_norm2;
  check.tolerance = 4.0 * std::sqrt(lhs.se * lhs.se + vn.se * vn.se);
  const double deviation = std::abs(check.lhs - check.rhs);
  // Exact-arithmetic slack for the deterministic full-batch case.
  const double eps = 1e-10 * (1.0 + std::abs(check.lhs) + std::abs(check.rhs));
  check.ok = deviation <= check.tolerance + eps;
  check.margin = check.tolerance + eps - deviation;
  return check;
}

StatCheck lemma2_check(const Problem& problem, std::span<const ModelVector> worker_models,
                       int batch, int trials, std::mt19937_64& rng, double sigma2,
                       double M_G, double m) {
  if (worker_models.empty()) throw InputError("lemma2_check: no worker models");
  const std::vector<int> shard = whole_dataset_shard(problem);
  const auto k = static_cast<double>(worker_models.size());

  double sum_full_norm2 = 0.0;
  for (const auto& w : worker_models) sum_full_norm2 += problem.full_gradient(w).squaredNorm();

  std::vector<double> lhs_samples(trials);
  ModelVector sum(problem.dimension());
  for (int i = 0; i < trials; ++i) {
    sum.setZero();
    for (const auto& w : worker_models) sum += batch_gradient(problem, w, shard, batch, rng);
    lhs_samples[i] = sum.squaredNorm();
  }
  const MeanVar lhs = mean_and_se(lhs_samples);

  StatCheck check;
  check.lhs = lhs.mean;
  check.rhs = k * sigma2 / m + (M_G / m + 1.0) * sum_full_norm2;
  check.tolerance = 4.0 * lhs.se;
  const double eps = 1e-10 * (1.0 + std::abs(check.lhs) + std::abs(check.rhs));
  check.ok = check.lhs <= check.rhs + check.tolerance + eps;
  check.margin = check.rhs + check.tolerance + eps - check.lhs;
  return check;
}

SignificanceReport significance_fraction(
    std::span<const std::pair<ModelVector, ModelVector>> update_and_model,
    double s_percent) {
  if (update_and_model.empty())
    throw InputError("significance_fraction: empty update trace");
  SignificanceReport rep;
  int significant = 0;
  for (const auto& [u, w] : update_and_model) {
    const double wn = w.norm();
    if (wn == 0.0) {
      ++rep.skipped;
      continue;
    }
    ++rep.counted;
    if (u.norm() / wn >= s_percent / 100.0) ++significant;
  }
  rep.fraction = rep.counted > 0 ? static_cast<double>(significant) / rep.counted : 0.0;
  return rep;
}

}  // namespace abssim
