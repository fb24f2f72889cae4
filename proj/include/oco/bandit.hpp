#pragma once

#include <cstddef>
#include <vector>

#include "oco/rng.hpp"
#include "oco/vec.hpp"

namespace oco {

// Importance-weighted loss estimate: loss / x_arm on the pulled arm, zero
// elsewhere. Unbiased when the arm is drawn from x.
vec iw_estimate(const vec& x, std::size_t arm, double loss);

enum class adv_bandit_algo { exp3, explore_mix, tsallis };

// Adversarial bandit, one of three update rules over the same state shape.
// x is the inner weight vector: strictly positive and summing to one within
// 1e-10 (the sampling mixture of explore_mix additionally floors coordinates
// at alpha / d).
struct adv_bandit_state {
  vec x;
  adv_bandit_algo algo;
  double eta;         // learning rate, > 0
  double alpha;       // explore_mix mixing weight in [0, 1]; unused otherwise
  double loss_bound;  // largest loss magnitude accepted per round
  std::size_t t;      // rounds completed
};

adv_bandit_state make_exp3(std::size_t dim, double eta, double loss_bound = 1.0);
adv_bandit_state make_explore_mix(std::size_t dim, double eta, double alpha,
                                  double loss_bound = 1.0);
adv_bandit_state make_tsallis(std::size_t dim, double eta);

// Distribution the caller should draw the arm from: x itself, except for
// explore_mix where it is (1 - alpha) x + alpha / d.
vec sampling_distribution(const adv_bandit_state& state);

// Multiplicative-weights update on the importance-weighted estimate; losses
// must lie in [0, loss_bound].
adv_bandit_state exp3_step(const adv_bandit_state& state, std::size_t arm, double loss);

// Same update but the estimate divides by the exploration mixture, which caps
// its magnitude at dim * loss_bound / alpha; losses may be negative.
adv_bandit_state explore_mix_step(const adv_bandit_state& state, std::size_t arm, double loss);

// 1/2-Tsallis regularized leader. The new point solves
// x_i = (beta + x_old_i^{-1/2} + eta * estimate_i)^{-2} with beta bisected
// until the coordinates sum to one within 1e-10; losses must be >= 0.
adv_bandit_state tsallis_step(const adv_bandit_state& state, std::size_t arm, double loss);

// Inverse-CDF draw from a distribution vector.
std::size_t sample_arm(const vec& distribution, rng_engine& rng);

enum class stoch_policy { etc, ucb };

// Stochastic bandit bookkeeping: pull counts, running mean losses, and the
// choice policy. sum(pulls) == t always.
struct stoch_bandit_state {
  std::vector<std::size_t> pulls;
  vec means;
  stoch_policy policy;
  double alpha;           // ucb exploration scale, > 2
  std::size_t m;          // etc exploration pulls per arm
  std::size_t horizon;    // etc total rounds
  std::size_t committed;  // etc arm fixed after exploration; == dim until then
  std::size_t t;          // rounds completed
};

// Explore-then-commit: requires 1 <= m <= horizon / dim.
stoch_bandit_state make_etc(std::size_t dim, std::size_t m, std::size_t horizon);

// Upper-confidence-bound policy on mean losses; requires alpha > 2.
stoch_bandit_state make_ucb(std::size_t dim, double alpha);

// Round-robin through the arms for the first dim * m rounds (phase matches
// ((round mod dim) + 1) in 1-based numbering), then the frozen
// lowest-index argmin of the exploration means.
std::size_t etc_choose(const stoch_bandit_state& state);

// mean_i - sqrt(2 alpha ln(round) / pulls_i) for the upcoming round;
// unpulled arms score -infinity so they are tried first.
double ucb_index(const stoch_bandit_state& state, std::size_t arm);

// Lowest-index minimizer of ucb_index.
std::size_t ucb_choose(const stoch_bandit_state& state);

// Dispatch on the stored policy.
std::size_t stoch_choose(const stoch_bandit_state& state);

// Record one observed loss: increments the pull count, updates the running
// mean, and freezes the etc commitment when exploration ends.
stoch_bandit_state stoch_update(const stoch_bandit_state& state, std::size_t arm, double loss);

enum class arm_kind { bernoulli, gaussian };

// Loss distribution of one arm. Bernoulli uses mean as the success
// probability (sigma ignored); Gaussian is mean/sigma with sigma > 0.
struct arm_model {
  arm_kind kind;
  double mean;
  double sigma;
};

void validate(const arm_model& arm);
double sample_loss(const arm_model& arm, rng_engine& rng);

}  // namespace oco
