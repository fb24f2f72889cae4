#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "oco/bandit.hpp"
#include "oco/learner.hpp"
#include "oco/loss.hpp"
#include "oco/vec.hpp"

namespace oco {

// Loss-sequence generators. next_loss is a pure function of (environment, t):
// random kinds draw from an engine seeded per round with derive_seed(seed, t),
// so streams are bit-exact for a given seed and rounds can be generated in
// any order or on several threads.

struct guessing_game {
  std::vector<double> y;  // targets in [0, 1]; round t uses y[t-1]
};

// The alternating linear sequence on [-1, 1] that makes the unregularized
// leader ping-pong: -0.5 first, then +1 on even rounds, -1 on odd ones.
struct ftl_failure {};

// Linear losses L * eps_t * z with Rademacher signs along a fixed unit
// direction; the classic sqrt(T) lower-bound construction at diameter D.
struct rademacher_olo {
  double lipschitz;
  double diameter;
  vec direction;  // normalized at construction
};

// g_t = mean + sigma * standard normal noise per coordinate.
struct iid_linear {
  vec mean;
  double sigma;
};

// Full loss vector of independent arm draws; bandit runners index into it
// with the pulled arm.
struct stochastic_arms {
  std::vector<arm_model> arms;
};

// The same convex loss every round.
struct fixed_convex {
  loss_spec loss;
};

using environment_kind = std::variant<guessing_game, ftl_failure, rademacher_olo, iid_linear,
                                      stochastic_arms, fixed_convex>;

struct environment {
  environment_kind kind;
  std::uint64_t seed;
};

// Validates the payload (targets in range, positive scales, unit direction
// after normalization, at least two arms) and throws std::invalid_argument.
environment make_environment(environment_kind kind, std::uint64_t seed);

// Dimension of the predictions the environment's losses expect.
std::size_t env_dim(const environment& env);

// Loss for 1-based round t. Throws std::invalid_argument for t = 0 and
// std::out_of_range past a guessing game's target sequence.
loss_spec next_loss(const environment& env, std::size_t t);

// Weighted averaging of online iterates against a stochastic loss source.
struct batch_conversion_result {
  vec average;                  // sum alpha_t x_t / sum alpha_t
  std::vector<double> weights;  // the alpha_t used, all positive
  double objective;             // caller's objective at the average
};

// Round index in, sampled loss out; implementations own their randomness.
using loss_sampler = std::function<loss_spec(std::size_t)>;
using objective_fn = std::function<double(const vec&)>;

enum class o2b_weighting { uniform, inv_sqrt_t, linear_t };

// alpha_t = 1, 1 / sqrt(t), or t for t = 1..horizon.
std::vector<double> o2b_weights(std::size_t horizon, o2b_weighting kind);

// Runs the learner on alpha_t-scaled sampled losses and returns the
// alpha-weighted average of the predictions with the objective evaluated
// there. Requires one positive weight per round.
batch_conversion_result online_to_batch(olo_learner& learner, const loss_sampler& sampler,
                                        std::size_t horizon, const std::vector<double>& weights,
                                        const objective_fn& objective);

}  // namespace oco
