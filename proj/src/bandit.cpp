#include "oco/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "oco/mirror_descent.hpp"

namespace oco {

namespace {

void check_arm(std::size_t arm, std::size_t dim) {
  if (arm >= dim) {
    throw std::invalid_argument("arm index " + std::to_string(arm) +
                                " out of range for " + std::to_string(dim) + " arms");
  }
}

void check_adv_algo(const adv_bandit_state& state, adv_bandit_algo expected) {
  if (state.algo != expected) {
    throw std::logic_error("step function does not match the state's algorithm");
  }
}

adv_bandit_state make_adv(std::size_t dim, adv_bandit_algo algo, double eta,
                          double alpha, double loss_bound) {
  if (dim < 2) throw std::invalid_argument("bandit needs at least 2 arms");
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("learning rate must be positive and finite");
  }
  if (!(loss_bound > 0.0) || !std::isfinite(loss_bound)) {
    throw std::invalid_argument("loss bound must be positive and finite");
  }
  adv_bandit_state state;
  state.x = vec(dim, 1.0 / static_cast<double>(dim));
  state.algo = algo;
  state.eta = eta;
  state.alpha = alpha;
  state.loss_bound = loss_bound;
  state.t = 0;
  return state;
}

// Shared multiplicative update: scale one coordinate by exp(-eta * estimate)
// and renormalize. exp3 and explore_mix (alpha = 0) must agree bit for bit,
// so both go through here.
void mw_update(vec& x, std::size_t arm, double eta, double estimate) {
  x[arm] *= std::exp(-eta * estimate);
  double sum = 0.0;
  for (double v : x) sum += v;
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw std::runtime_error("multiplicative weights collapsed to zero mass");
  }
  for (double& v : x) v /= sum;
}

}  // namespace

vec iw_estimate(const vec& x, std::size_t arm, double loss) {
  check_arm(arm, x.size());
  if (!std::isfinite(loss)) throw std::invalid_argument("loss must be finite");
  if (!(x[arm] > 0.0)) {
    throw std::invalid_argument("importance weighting needs positive probability on the pulled arm");
  }
  vec estimate = zeros(x.size());
  estimate[arm] = loss / x[arm];
  return estimate;
}

adv_bandit_state make_exp3(std::size_t dim, double eta, double loss_bound) {
  return make_adv(dim, adv_bandit_algo::exp3, eta, 0.0, loss_bound);
}

adv_bandit_state make_explore_mix(std::size_t dim, double eta, double alpha,
                                  double loss_bound) {
  if (!(alpha >= 0.0) || !(alpha <= 1.0)) {
    throw std::invalid_argument("mixing weight must lie in [0, 1]");
  }
  return make_adv(dim, adv_bandit_algo::explore_mix, eta, alpha, loss_bound);
}

adv_bandit_state make_tsallis(std::size_t dim, double eta) {
  return make_adv(dim, adv_bandit_algo::tsallis, eta, 0.0, 1.0);
}

vec sampling_distribution(const adv_bandit_state& state) {
  if (state.algo != adv_bandit_algo::explore_mix) return state.x;
  const double d = static_cast<double>(state.x.size());
  vec mixed(state.x.size());
  for (std::size_t i = 0; i < state.x.size(); ++i) {
    mixed[i] = (1.0 - state.alpha) * state.x[i] + state.alpha / d;
  }
  return mixed;
}

adv_bandit_state exp3_step(const adv_bandit_state& state, std::size_t arm, double loss) {
  check_adv_algo(state, adv_bandit_algo::exp3);
  check_arm(arm, state.x.size());
  if (!(loss >= 0.0) || !(loss <= state.loss_bound)) {
    throw std::invalid_argument("loss outside [0, loss_bound]");
  }
  adv_bandit_state next = state;
  vec estimate = iw_estimate(state.x, arm, loss);
  mw_update(next.x, arm, state.eta, estimate[arm]);
  next.t += 1;
  return next;
}

adv_bandit_state explore_mix_step(const adv_bandit_state& state, std::size_t arm, double loss) {
  check_adv_algo(state, adv_bandit_algo::explore_mix);
  check_arm(arm, state.x.size());
  if (!(std::abs(loss) <= state.loss_bound)) {
    throw std::invalid_argument("loss outside [-loss_bound, loss_bound]");
  }
  adv_bandit_state next = state;
  vec mixed = sampling_distribution(state);
  vec estimate = iw_estimate(mixed, arm, loss);
  mw_update(next.x, arm, state.eta, estimate[arm]);
  next.t += 1;
  return next;
}

adv_bandit_state tsallis_step(const adv_bandit_state& state, std::size_t arm, double loss) {
  check_adv_algo(state, adv_bandit_algo::tsallis);
  check_arm(arm, state.x.size());
  if (!(loss >= 0.0) || !std::isfinite(loss)) {
    throw std::invalid_argument("loss must be finite and nonnegative");
  }
  const std::size_t d = state.x.size();
  vec estimate = iw_estimate(state.x, arm, loss);

  // New point solves x_i = (beta + a_i)^{-2} with a_i = x_old_i^{-1/2} +
  // eta * estimate_i and beta normalizing the sum to one. The sum is strictly
  // decreasing in beta. At beta = 1 - min(a) the smallest-a coordinate alone
  // contributes 1, so the sum exceeds 1; at beta = sqrt(d) + 1 - min(a) every
  // coordinate is below 1/d, so the sum falls short. Bisect between them.
  vec a(d);
  double a_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d; ++i) {
    if (!(state.x[i] > 0.0)) {
      throw std::runtime_error("tsallis state lost strict positivity");
    }
    a[i] = 1.0 / std::sqrt(state.x[i]) + state.eta * estimate[i];
    a_min = std::min(a_min, a[i]);
  }
  auto total = [&](double beta) {
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double s = beta + a[i];
      sum += 1.0 / (s * s);
    }
    return sum;
  };
  double lo = 1.0 - a_min;
  double hi = std::sqrt(static_cast<double>(d)) + 1.0 - a_min;
  double beta = 0.5 * (lo + hi);
  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    beta = 0.5 * (lo + hi);
    const double sum = total(beta);
    if (std::abs(sum - 1.0) <= 1e-10) {
      converged = true;
      break;
    }
    if (sum > 1.0) {
      lo = beta;
    } else {
      hi = beta;
    }
  }
  if (!converged) {
    throw std::runtime_error("tsallis normalization did not converge in 200 bisections");
  }

  adv_bandit_state next = state;
  for (std::size_t i = 0; i < d; ++i) {
    const double s = beta + a[i];
    next.x[i] = 1.0 / (s * s);
  }
  next.t += 1;
  return next;
}

std::size_t sample_arm(const vec& distribution, rng_engine& rng) {
  return sample_expert(distribution, rng);
}

stoch_bandit_state make_etc(std::size_t dim, std::size_t m, std::size_t horizon) {
  if (dim < 2) throw std::invalid_argument("bandit needs at least 2 arms");
  if (m < 1 || m * dim > horizon) {
    throw std::invalid_argument("exploration length must satisfy 1 <= m <= horizon / arms");
  }
  stoch_bandit_state state;
  state.pulls.assign(dim, 0);
  state.means = zeros(dim);
  state.policy = stoch_policy::etc;
  state.alpha = 0.0;
  state.m = m;
  state.horizon = horizon;
  state.committed = dim;
  state.t = 0;
  return state;
}

stoch_bandit_state make_ucb(std::size_t dim, double alpha) {
  if (dim < 2) throw std::invalid_argument("bandit needs at least 2 arms");
  if (!(alpha > 2.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("ucb exploration scale must exceed 2");
  }
  stoch_bandit_state state;
  state.pulls.assign(dim, 0);
  state.means = zeros(dim);
  state.policy = stoch_policy::ucb;
  state.alpha = alpha;
  state.m = 0;
  state.horizon = 0;
  state.committed = dim;
  state.t = 0;
  return state;
}

std::size_t etc_choose(const stoch_bandit_state& state) {
  if (state.policy != stoch_policy::etc) {
    throw std::logic_error("etc_choose on a non-etc state");
  }
  const std::size_t dim = state.pulls.size();
  if (state.t < state.m * dim) return (state.t + 1) % dim;
  if (state.committed >= dim) {
    throw std::logic_error("etc exploration finished without a commitment");
  }
  return state.committed;
}

double ucb_index(const stoch_bandit_state& state, std::size_t arm) {
  if (state.policy != stoch_policy::ucb) {
    throw std::logic_error("ucb_index on a non-ucb state");
  }
  check_arm(arm, state.pulls.size());
  if (state.pulls[arm] == 0) return -std::numeric_limits<double>::infinity();
  const double round = static_cast<double>(state.t + 1);
  const double width =
      std::sqrt(2.0 * state.alpha * std::log(round) / static_cast<double>(state.pulls[arm]));
  return state.means[arm] - width;
}

std::size_t ucb_choose(const stoch_bandit_state& state) {
  std::size_t best = 0;
  double best_index = ucb_index(state, 0);
  for (std::size_t i = 1; i < state.pulls.size(); ++i) {
    const double index = ucb_index(state, i);
    if (index < best_index) {
      best = i;
      best_index = index;
    }
  }
  return best;
}

std::size_t stoch_choose(const stoch_bandit_state& state) {
  return state.policy == stoch_policy::etc ? etc_choose(state) : ucb_choose(state);
}

stoch_bandit_state stoch_update(const stoch_bandit_state& state, std::size_t arm, double loss) {
  check_arm(arm, state.pulls.size());
  if (!std::isfinite(loss)) throw std::invalid_argument("loss must be finite");
  if (state.policy == stoch_policy::etc && state.t >= state.horizon) {
    throw std::out_of_range("etc horizon exhausted");
  }
  stoch_bandit_state next = state;
  next.pulls[arm] += 1;
  next.means[arm] += (loss - next.means[arm]) / static_cast<double>(next.pulls[arm]);
  next.t += 1;
  const std::size_t dim = state.pulls.size();
  if (next.policy == stoch_policy::etc && next.t == next.m * dim) {
    // Freeze the commitment on the exploration means; later updates keep
    // adjusting means but never the chosen arm.
    std::size_t best = 0;
    for (std::size_t i = 1; i < dim; ++i) {
      if (next.means[i] < next.means[best]) best = i;
    }
    next.committed = best;
  }
  return next;
}

void validate(const arm_model& arm) {
  switch (arm.kind) {
    case arm_kind::bernoulli:
      if (!(arm.mean >= 0.0) || !(arm.mean <= 1.0)) {
        throw std::invalid_argument("bernoulli parameter must lie in [0, 1]");
      }
      return;
    case arm_kind::gaussian:
      if (!std::isfinite(arm.mean)) throw std::invalid_argument("gaussian mean must be finite");
      if (!(arm.sigma > 0.0) || !std::isfinite(arm.sigma)) {
        throw std::invalid_argument("gaussian sigma must be positive");
      }
      return;
  }
  throw std::invalid_argument("unknown arm kind");
}

double sample_loss(const arm_model& arm, rng_engine& rng) {
  validate(arm);
  if (arm.kind == arm_kind::bernoulli) return bernoulli(rng, arm.mean) ? 1.0 : 0.0;
  return normal(rng, arm.mean, arm.sigma);
}

}  // namespace oco
