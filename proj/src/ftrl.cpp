#include "oco/ftrl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oco {

namespace {

void check_gradient(const vec& g, std::size_t d) {
  if (g.size() != d) throw std::invalid_argument("gradient dimension mismatch");
  if (!all_finite(g)) throw std::invalid_argument("gradient must be finite");
}

double lambda_value(const ftrl_lambda& lam, int grads_seen) {
  return lam.sqrt_t ? lam.coeff * std::sqrt(static_cast<double>(grads_seen)) : lam.coeff;
}

// softmax of theta / temperature with the max shifted out first
vec stable_softmax(const vec& theta, double temperature) {
  vec out(theta.size());
  double m = theta[0] / temperature;
  for (std::size_t j = 1; j < theta.size(); ++j) m = std::max(m, theta[j] / temperature);
  double z = 0.0;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    out[j] = std::exp(theta[j] / temperature - m);
    z += out[j];
  }
  for (auto& v : out) v /= z;
  return out;
}

// uniform over the coordinates attaining max theta; the zero-temperature
// limit of the softmax
vec argmax_uniform(const vec& theta) {
  double m = *std::max_element(theta.begin(), theta.end());
  vec out(theta.size(), 0.0);
  int n = 0;
  for (std::size_t j = 0; j < theta.size(); ++j)
    if (theta[j] == m) ++n;
  for (std::size_t j = 0; j < theta.size(); ++j)
    if (theta[j] == m) out[j] = 1.0 / n;
  return out;
}

}  // namespace

ftrl_lin_state make_ftrl_lin(std::size_t d, feasible_set set, ftrl_lambda lambda) {
  if (d == 0) throw std::invalid_argument("need at least one coordinate");
  if (!(lambda.coeff > 0.0)) throw std::invalid_argument("lambda coefficient must be positive");
  if (std::holds_alternative<simplex>(set))
    throw std::invalid_argument("simplex has no closed-form quadratic-regularizer minimizer here");
  ftrl_lin_state s;
  s.theta = zeros(d);
  s.x = project(set, zeros(d));
  s.set = std::move(set);
  s.lambda = lambda;
  return s;
}

ftrl_lin_state ftrl_lin_step(const ftrl_lin_state& state, const vec& g) {
  check_gradient(g, state.theta.size());
  ftrl_lin_state next = state;
  for (std::size_t j = 0; j < g.size(); ++j) next.theta[j] -= g[j];
  next.t += 1;
  const double lam = lambda_value(next.lambda, next.t);
  next.x = project(next.set, scaled(next.theta, 1.0 / lam));
  return next;
}

entropic_ftrl_state make_entropic_ftrl(std::size_t d) {
  if (d == 0) throw std::invalid_argument("need at least one coordinate");
  entropic_ftrl_state s;
  s.theta = zeros(d);
  s.x = vec(d, 1.0 / static_cast<double>(d));
  return s;
}

entropic_ftrl_state ftrl_entropic_step(const entropic_ftrl_state& state, const vec& g,
                                       double alpha, double linf) {
  check_gradient(g, state.theta.size());
  if (!(alpha > 0.0) || !(linf > 0.0))
    throw std::invalid_argument("alpha and the gradient bound must be positive");
  if (norm_inf(g) > linf) throw std::invalid_argument("gradient exceeds the stated bound");
  entropic_ftrl_state next = state;
  for (std::size_t j = 0; j < g.size(); ++j) next.theta[j] -= g[j];
  next.t += 1;
  const double temperature = alpha * linf * std::sqrt(static_cast<double>(next.t + 1));
  next.x = stable_softmax(next.theta, temperature);
  return next;
}

adahedge_state make_adahedge(std::size_t d, double alpha) {
  if (d == 0) throw std::invalid_argument("need at least one coordinate");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  adahedge_state s;
  s.theta = zeros(d);
  s.x = vec(d, 1.0 / static_cast<double>(d));
  s.alpha = alpha;
  return s;
}

adahedge_state adahedge_step(const adahedge_state& state, const vec& g) {
  check_gradient(g, state.theta.size());
  adahedge_state next = state;

  double delta;
  if (state.lambda == 0.0) {
    // zero-temperature limit of the mix loss: min over the support of x_t
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < g.size(); ++j)
      if (state.x[j] > 0.0) m = std::min(m, g[j]);
    delta = dot(g, state.x) - m;
  } else {
    double mx = -g[0];
    for (std::size_t j = 1; j < g.size(); ++j) mx = std::max(mx, -g[j]);
    double z = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
      z += state.x[j] * std::exp(-g[j] / state.lambda - mx / state.lambda);
    // lambda ln(sum_j x_j e^{-g_j/lambda}) + <g, x>, with the shift restored
    delta = state.lambda * std::log(z) + mx + dot(g, state.x);
  }
  delta = std::max(delta, 0.0);  // nonnegative by construction, guard rounding

  for (std::size_t j = 0; j < g.size(); ++j) next.theta[j] -= g[j];
  next.lambda = state.lambda + delta / (state.alpha * state.alpha);
  next.t += 1;
  next.x = next.lambda > 0.0 ? stable_softmax(next.theta, next.lambda)
                             : argmax_uniform(next.theta);
  return next;
}

composite_l1_state make_composite_l1(std::size_t d) {
  if (d == 0) throw std::invalid_argument("need at least one coordinate");
  composite_l1_state s;
  s.theta = zeros(d);
  s.x = zeros(d);
  return s;
}

composite_l1_state composite_l1_step(const composite_l1_state& state, const vec& g,
                                     double lambda, double lipschitz) {
  check_gradient(g, state.theta.size());
  if (!(lambda > 0.0) || !(lipschitz > 0.0))
    throw std::invalid_argument("lambda and lipschitz must be positive");
  composite_l1_state next = state;
  for (std::size_t j = 0; j < g.size(); ++j) next.theta[j] += g[j];
  next.t += 1;
  const double round = static_cast<double>(next.t + 1);  // prediction round index
  const double denom = lipschitz * std::sqrt(round);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double mag = std::fabs(next.theta[j]) - lambda * round;
    next.x[j] = mag > 0.0 ? -std::copysign(mag, next.theta[j]) / denom : 0.0;
  }
  return next;
}

quadratized_state make_quadratized(std::size_t d) {
  if (d == 0) throw std::invalid_argument("need at least one coordinate");
  quadratized_state s;
  s.weighted = zeros(d);
  s.x = zeros(d);
  return s;
}

quadratized_state quadratized_step(const quadratized_state& state, const vec& g, double mu,
                                   const vec& x_obs) {
  check_gradient(g, state.weighted.size());
  if (x_obs.size() != state.weighted.size())
    throw std::invalid_argument("observation dimension mismatch");
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  quadratized_state next = state;
  for (std::size_t j = 0; j < g.size(); ++j) next.weighted[j] += mu * x_obs[j] - g[j];
  next.mu_sum += mu;
  next.t += 1;
  next.x = scaled(next.weighted, 1.0 / next.mu_sum);
  return next;
}

optimistic_state make_optimistic(std::size_t d, feasible_set set, ftrl_lambda lambda,
                                 hint_kind hint) {
  optimistic_state s;
  s.inner = make_ftrl_lin(d, std::move(set), lambda);
  s.hint = hint;
  s.g_sum = zeros(d);
  return s;
}

optimistic_state make_optimistic_gradual(std::size_t d, feasible_set set, hint_kind hint,
                                         double smoothness, double lipschitz) {
  if (!(smoothness > 0.0) || !(lipschitz > 0.0))
    throw std::invalid_argument("smoothness and lipschitz must be positive");
  optimistic_state s;
  s.inner = make_ftrl_lin(d, std::move(set), ftrl_lambda{1.0, false});
  s.hint = hint;
  s.gradual = true;
  s.smoothness = smoothness;
  s.lipschitz = lipschitz;
  s.g_sum = zeros(d);
  return s;
}

optimistic_state optimistic_step(const optimistic_state& state, const vec& g) {
  check_gradient(g, state.inner.theta.size());
  optimistic_state next = state;

  if (!next.last_g.empty()) next.variation_sq += norm2_sq(sub(g, next.last_g));
  for (std::size_t j = 0; j < g.size(); ++j) {
    next.inner.theta[j] -= g[j];
    next.g_sum[j] += g[j];
  }
  next.inner.t += 1;
  next.last_g = g;

  double lam;
  if (next.gradual) {
    const double floor_sq =
        std::max(8.0 * next.smoothness * next.smoothness, 4.0 * next.lipschitz * next.lipschitz);
    lam = std::sqrt(floor_sq + next.variation_sq);
  } else {
    lam = lambda_value(next.inner.lambda, next.inner.t);
  }

  if (next.hint == hint_kind::zero) {
    next.inner.x = project(next.inner.set, scaled(next.inner.theta, 1.0 / lam));
    return next;
  }
  vec shifted = next.inner.theta;
  if (next.hint == hint_kind::last_gradient) {
    for (std::size_t j = 0; j < g.size(); ++j) shifted[j] -= g[j];
  } else {
    const double inv_t = 1.0 / next.inner.t;
    for (std::size_t j = 0; j < g.size(); ++j) shifted[j] -= next.g_sum[j] * inv_t;
  }
  next.inner.x = project(next.inner.set, scaled(shifted, 1.0 / lam));
  return next;
}

}  // namespace oco
