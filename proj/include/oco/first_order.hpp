#pragma once

#include <variant>
#include <vector>

#include "oco/geometry.hpp"
#include "oco/vec.hpp"

namespace oco {

// Stepsize schedules for projected subgradient descent.
struct constant_step {
  double eta;
};
// eta_t = diameter / (lipschitz * sqrt(t))
struct decaying_step {
  double diameter;
  double lipschitz;
};
// eta_t = sqrt(2) * diameter / (2 * sqrt(sum_{i<=t} ||g_i||^2)), current
// gradient included in the sum.
struct adaptive_global_step {
  double diameter;
};
// eta_t = 1 / sum_{i<=t} mu_i; the last schedule entry repeats forever, so a
// single-element schedule is a constant curvature.
struct strongly_convex_step {
  std::vector<double> mu;
};

using stepsize_policy =
    std::variant<constant_step, decaying_step, adaptive_global_step, strongly_convex_step>;

// Throws std::invalid_argument unless every constant is strictly positive.
void validate(const stepsize_policy& policy);

// eta_t for round t >= 1. grad_sq_sum must already include round t's gradient
// for the adaptive policy; callers guard grad_sq_sum == 0 themselves.
double stepsize(const stepsize_policy& policy, int t, double grad_sq_sum);

struct osd_state {
  vec x;
  feasible_set set;
  stepsize_policy policy;
  double grad_sq_sum = 0.0;
  int t = 0;  // rounds completed
};

// x0 is projected onto the set so the state invariant x in set holds from the
// start.
osd_state make_osd(vec x0, feasible_set set, stepsize_policy policy);

// x_{t+1} = project(set, x_t - eta_t g). A zero adaptive denominator leaves x
// unchanged (the limit of the update with g = 0).
osd_state osd_step(const osd_state& state, const vec& g);

struct adagrad_state {
  vec x;
  box domain;
  vec per_coord_sq;  // running sum of squared gradient coordinates
  int t = 0;
};

adagrad_state make_adagrad(vec x0, box domain);

// Per-coordinate update with eta_{t,i} = sqrt(2) (hi_i - lo_i) / (2 sqrt(S_i))
// after adding g_i^2 to S_i, clipped to the box. Coordinates whose running
// square sum is still zero do not move.
adagrad_state adagrad_step(const adagrad_state& state, const vec& g);

}  // namespace oco
