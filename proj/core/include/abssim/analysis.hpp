#pragma once

#include <random>
#include <span>
#include <utility>
#include <vector>

#include "abssim/problem.hpp"
#include "abssim/vec.hpp"

namespace abssim {

/// Constants of the convergence analysis. L, F0, F* describe the problem;
/// sigma2 and M_G parameterize the affine variance bound of the stochastic
/// batch gradient; gamma bounds the delayed-gradient similarity; m is the
/// batch size the bounds are stated in (taken equal to B here).
struct TheoryConstants {
  double L = 1.0;
  double sigma2 = 0.0;
  double M_G = 0.0;
  double gamma = 0.0;
  double m = 1.0;
  double F0 = 1.0;
  double Fstar = 0.0;
  int k0 = 1;
  int U = 1;
  int T = 1;
};

/// Ergodic bound on the time-averaged squared gradient norm for a fixed
/// step size: 2(F0 - F*)/(T eta U (1-gamma)) + L eta sigma2/(K0 m (1-gamma)).
double theorem1_bound(const TheoryConstants& c, double eta);

struct CorollaryResult {
  double eta = 0.0;                  // bound-minimizing step size
  double side_condition_limit = 0.0; // 1 / (L (M_G/(K0 m) + 1/K^t)) at the strictest K^t
  bool side_condition_ok = false;
};

/// Step size sqrt(2 (F0-F*) K0 m / (T U L sigma2)) plus whether it satisfies
/// the side condition over the run's K^t range (strictest at K^t = K0).
CorollaryResult corollary1_lr(const TheoryConstants& c);

struct ConstantsOptions {
  int batch = 32;           // B used for the variance probes (m = B)
  int draws_per_point = 256;
};

/// Fits sigma2 and M_G by regressing empirical batch-gradient variance
/// against ||grad F||^2 over the sample points; L and F* come from the
/// problem's analytic accessors. Only quadratic/logistic problems qualify.
/// gamma is left 0; estimate_gamma fills it from a realized trajectory.
TheoryConstants estimate_constants(const Problem& problem,
                                   std::span<const ModelVector> w_samples,
                                   std::mt19937_64& rng,
                                   const ConstantsOptions& options = {});

/// Realized worst-case delay similarity over a trajectory:
/// max ||grad F(w^t) - grad F(w^{t-tau})||^2 / ||grad F(w^t)||^2 over the
/// consumed (round, staleness) pairs, clipped to [0, 0.99].
double estimate_gamma(const Problem& problem, std::span<const ModelVector> models,
                      std::span<const std::pair<int, int>> consumed);

/// Outcome of one Monte Carlo comparison at 4-standard-error tolerance.
struct StatCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;  // 4 x combined standard error
  bool ok = false;
  double margin = 0.0;     // tolerance - |deviation| (equality) or slack (bound)
};

/// Identity behind the convergence proof: for a batch gradient v taken at a
/// delayed point w', E||v - gF(w)||^2 = E||v||^2 - ||gF(w')||^2
/// + ||gF(w) - gF(w')||^2. Both sides estimated independently.
StatCheck lemma1_check(const Problem& problem, const ModelVector& w,
                       const ModelVector& w_delayed, int batch, int trials,
                       std::mt19937_64& rng);

/// Variance bound on a sum of independent batch gradients:
/// E||sum_k g_k||^2 <= K sigma2/m + (M_G/m + 1) sum_k ||gF(w_k)||^2.
StatCheck lemma2_check(const Problem& problem, std::span<const ModelVector> worker_models,
                       int batch, int trials, std::mt19937_64& rng, double sigma2,
                       double M_G, double m);

struct SignificanceReport {
  double fraction = 0.0;  // share of updates with ||u|| / ||w|| >= S/100
  int counted = 0;
  int skipped = 0;        // zero-norm models
};

/// Share of significant updates in the Gaia sense: ||u^t||/||w^t|| >= S%.
SignificanceReport significance_fraction(
    std::span<const std::pair<ModelVector, ModelVector>> update_and_model,
    double s_percent);

}  // namespace abssim
