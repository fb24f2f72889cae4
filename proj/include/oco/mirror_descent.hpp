#pragma once

#include <cstddef>

#include "oco/geometry.hpp"
#include "oco/rng.hpp"
#include "oco/vec.hpp"

namespace oco {

// Multiplicative-weights step on the probability simplex with a fixed
// stepsize. Time-varying temperatures live in the regularized leader module;
// a decaying stepsize with an entropic mirror map has a vacuous guarantee.
struct eg_state {
  vec x;
  double eta;
  int t = 0;
};

// starts at the uniform distribution
eg_state make_eg(std::size_t d, double eta);

// x'_j = x_j exp(-eta g_j) / sum_i x_i exp(-eta g_i), with the max of
// -eta g subtracted before exponentiation; normalization makes the shift
// exact, so overflow is impossible for finite g.
eg_state eg_step(const eg_state& state, const vec& g);

// Mirror step through the p-norm dual maps over all of space, p in (1,2].
struct pnorm_state {
  vec x;
  double p;
  double eta;
  int t = 0;
};

pnorm_state make_pnorm(vec x0, double p, double eta);

// dual = gradient of half the squared p-norm; the step is
// dual(x) - eta g pulled back through the q-norm map, q = p/(p-1).
pnorm_state pnorm_step(const pnorm_state& state, const vec& g);

// Inverse-CDF draw: the smallest index i with u < x_0 + ... + x_i.
// Split from the rng overload so fixed-u behavior is directly testable.
std::size_t sample_expert_from_uniform(const vec& x, double u);

// one uniform draw from rng, then inverse CDF
std::size_t sample_expert(const vec& x, rng_engine& rng);

}  // namespace oco
