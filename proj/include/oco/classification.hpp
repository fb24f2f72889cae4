#pragma once

#include <cstddef>

#include "oco/rng.hpp"
#include "oco/vec.hpp"

namespace oco {

// Mistake-driven linear classifier. x stays an integer combination of the
// labeled examples because updates only fire on mistakes.
struct perceptron_state {
  vec x;
  std::size_t mistakes;
};

perceptron_state make_perceptron(std::size_t dim);

struct perceptron_result {
  int prediction;  // +1 or -1; a zero margin counts as +1
  perceptron_state state;
};

// Predict sign(<z, x>), then add y*z to the weights iff the prediction was
// wrong. y must be +1 or -1.
perceptron_result perceptron_step(const perceptron_state& state, const vec& z, int y);

// Randomized linear classifier: regularized leader on the absolute-loss
// surrogate, constrained to the ball of radius 1/feature_bound so the margin
// <z, x> stays in [-1, 1] for every ||z|| <= feature_bound.
struct rand_classifier_state {
  vec theta;            // negated cumulative surrogate subgradients
  double feature_bound;  // upper bound on ||z||_2, > 0
  std::size_t t;        // rounds completed
};

rand_classifier_state make_rand_classifier(std::size_t dim, double feature_bound);

// Current play x_t = eta_t * theta * min(1 / (feature_bound * eta_t * ||theta||), 1)
// with eta_t = sqrt(2)/sqrt(t); ||x_t|| <= 1/feature_bound.
vec rand_classifier_point(const rand_classifier_state& state);

// Chance of emitting +1, namely (<z, x_t> + 1) / 2. Throws if ||z|| exceeds
// the feature bound.
double positive_label_probability(const rand_classifier_state& state, const vec& z);

struct rand_classifier_result {
  int prediction;  // +1 or -1, sampled
  rand_classifier_state state;
};

// Sample the label, then take the surrogate subgradient step
// theta -= 0.5 * sign(<z, x_t> - y) * z, with sign(0) := 0.
rand_classifier_result rand_classifier_step(const rand_classifier_state& state, const vec& z,
                                            int y, rng_engine& rng);

}  // namespace oco
