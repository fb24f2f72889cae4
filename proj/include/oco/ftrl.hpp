#pragma once

#include <cstddef>

#include "oco/geometry.hpp"
#include "oco/vec.hpp"

namespace oco {

// Regularizer strength for the prediction made after t gradients:
// coeff * sqrt(t) when sqrt_t is set, else coeff.
struct ftrl_lambda {
  double coeff;
  bool sqrt_t;
};

// Quadratic-regularizer leader on linearized losses. theta accumulates the
// negated gradients; the prediction is project(set, theta / lambda).
struct ftrl_lin_state {
  vec theta;
  vec x;
  feasible_set set;
  ftrl_lambda lambda;
  int t = 0;  // gradients received
};

// Supported sets: all of space, l2 ball, box (closed-form minimizers).
ftrl_lin_state make_ftrl_lin(std::size_t d, feasible_set set, ftrl_lambda lambda);
ftrl_lin_state ftrl_lin_step(const ftrl_lin_state& state, const vec& g);

// Simplex leader with entropic regularizer at temperature
// alpha * linf * sqrt(t); the time-varying counterpart of the fixed-stepsize
// multiplicative-weights step.
struct entropic_ftrl_state {
  vec theta;
  vec x;
  int t = 0;
};

entropic_ftrl_state make_entropic_ftrl(std::size_t d);
entropic_ftrl_state ftrl_entropic_step(const entropic_ftrl_state& state, const vec& g,
                                       double alpha, double linf);

// Scale-free simplex leader: the temperature lambda grows by the per-round
// gap between the suffered mixture loss and the mix loss.
struct adahedge_state {
  vec theta;
  vec x;
  double lambda = 0.0;
  double alpha;
  int t = 0;
};

adahedge_state make_adahedge(std::size_t d, double alpha);
adahedge_state adahedge_step(const adahedge_state& state, const vec& g);

// L1-composite leader: soft-threshold closed form, produces exact zeros.
// Here theta accumulates the gradients with positive sign.
struct composite_l1_state {
  vec theta;
  vec x;
  int t = 0;
};

composite_l1_state make_composite_l1(std::size_t d);
composite_l1_state composite_l1_step(const composite_l1_state& state, const vec& g,
                                     double lambda, double lipschitz);

// Leader on quadratic surrogates g^T x + (mu/2)||x - x_obs||^2, unconstrained.
// The prediction is the ratio of the running sums; before any observation it
// is the zero vector.
struct quadratized_state {
  vec weighted;  // sum of mu_i x_i - g_i
  double mu_sum = 0.0;
  vec x;
  int t = 0;
};

quadratized_state make_quadratized(std::size_t d);
quadratized_state quadratized_step(const quadratized_state& state, const vec& g, double mu,
                                   const vec& x_obs);

// Gradient-hint strategies for the optimistic leader.
enum class hint_kind { zero, last_gradient, running_mean };

// Optimistic leader: the prediction minimizes the regularized sum with the
// hinted next gradient added, i.e. project(set, (theta - hint) / lambda).
struct optimistic_state {
  ftrl_lin_state inner;
  hint_kind hint;
  bool gradual = false;     // lambda from the gradient-variation sum
  double smoothness = 0.0;  // M, only for gradual sizing
  double lipschitz = 0.0;   // L, only for gradual sizing
  double variation_sq = 0.0;
  vec last_g;  // empty until the first gradient
  vec g_sum;
};

optimistic_state make_optimistic(std::size_t d, feasible_set set, ftrl_lambda lambda,
                                 hint_kind hint);
// lambda_t = sqrt(max(8 M^2, 4 L^2) + sum of squared successive gradient
// differences seen so far); constant regret once the gradients settle.
optimistic_state make_optimistic_gradual(std::size_t d, feasible_set set, hint_kind hint,
                                         double smoothness, double lipschitz);
optimistic_state optimistic_step(const optimistic_state& state, const vec& g);

}  // namespace oco
