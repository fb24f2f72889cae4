#include "oco/classification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace oco {

namespace {

void check_example(const vec& z, std::size_t dim, int y) {
  if (z.size() != dim) {
    throw std::invalid_argument("example has size " + std::to_string(z.size()) + ", expected " +
                                std::to_string(dim));
  }
  if (!all_finite(z)) throw std::invalid_argument("example must be finite");
  if (y != 1 && y != -1) throw std::invalid_argument("label must be +1 or -1");
}

}  // namespace

perceptron_state make_perceptron(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("dimension must be at least 1");
  return perceptron_state{zeros(dim), 0};
}

perceptron_result perceptron_step(const perceptron_state& state, const vec& z, int y) {
  check_example(z, state.x.size(), y);
  int prediction = dot(z, state.x) >= 0.0 ? 1 : -1;
  perceptron_result result{prediction, state};
  if (prediction != y) {
    axpy(static_cast<double>(y), z, result.state.x);
    result.state.mistakes += 1;
  }
  return result;
}

rand_classifier_state make_rand_classifier(std::size_t dim, double feature_bound) {
  if (dim == 0) throw std::invalid_argument("dimension must be at least 1");
  if (!(feature_bound > 0.0) || !std::isfinite(feature_bound)) {
    throw std::invalid_argument("feature bound must be positive and finite");
  }
  return rand_classifier_state{zeros(dim), feature_bound, 0};
}

vec rand_classifier_point(const rand_classifier_state& state) {
  double norm = norm2(state.theta);
  if (norm == 0.0) return zeros(state.theta.size());
  double eta = std::sqrt(2.0) / std::sqrt(static_cast<double>(state.t + 1));
  double scale = eta * std::min(1.0 / (state.feature_bound * eta * norm), 1.0);
  return scaled(state.theta, scale);
}

double positive_label_probability(const rand_classifier_state& state, const vec& z) {
  if (z.size() != state.theta.size()) throw std::invalid_argument("example dimension mismatch");
  if (!all_finite(z)) throw std::invalid_argument("example must be finite");
  if (norm2(z) > state.feature_bound) {
    throw std::invalid_argument("example norm exceeds the feature bound");
  }
  // |<z, x>| <= ||z|| ||x|| <= 1; the clamp only strips rounding overshoot.
  return std::clamp((dot(z, rand_classifier_point(state)) + 1.0) / 2.0, 0.0, 1.0);
}

rand_classifier_result rand_classifier_step(const rand_classifier_state& state, const vec& z,
                                            int y, rng_engine& rng) {
  check_example(z, state.theta.size(), y);
  double p = positive_label_probability(state, z);
  rand_classifier_result result{bernoulli(rng, p) ? 1 : -1, state};

  double margin = dot(z, rand_classifier_point(state)) - static_cast<double>(y);
  double sign = margin > 0.0 ? 1.0 : (margin < 0.0 ? -1.0 : 0.0);
  axpy(-0.5 * sign, z, result.state.theta);
  result.state.t += 1;
  return result;
}

}  // namespace oco
