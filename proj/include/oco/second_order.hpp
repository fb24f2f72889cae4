#pragma once

#include <cstddef>
#include <vector>

#include "oco/geometry.hpp"
#include "oco/vec.hpp"

namespace oco {

// Dense symmetric matrices are stored row major in a flat buffer so the
// header stays free of linear-algebra library types.
using sym_matrix = std::vector<double>;

// Newton-style leader. Keeps S = lambda I + mu sum g g^T together with its
// maintained inverse, b = mu sum <g_i, x_i> g_i, and the gradient sum; the
// unconstrained prediction is S^{-1}(b - grad_sum).
struct ons_state {
  vec grad_sum;
  vec b;
  sym_matrix S;
  sym_matrix S_inv;
  vec x;  // prediction for the coming round
  double lambda;
  double mu;
  feasible_set set;  // all of space or l2 ball
  int t = 0;
  int updates_since_refactor = 0;
};

// Supported sets: all of space and l2 ball. The ball prediction solves the
// KKT system (S + nu I) x = b - grad_sum with ||x|| = radius for nu >= 0 by
// safeguarded bisection to 1e-10.
ons_state make_ons(std::size_t d, feasible_set set, double lambda, double mu);
ons_state ons_step(const ons_state& state, const vec& g, const vec& x_obs);

// Exp-concavity constant of the logistic loss ln(1 + exp(-<z, x>)) with
// ||z|| <= 1 over an l2 ball of the given radius.
double logistic_exp_concavity(double radius);

// Ridge-style forecaster for online least squares with the squared loss
// 0.5 (<z, x> - y)^2. The feature z enters the normal matrix before the
// prediction, i.e. x = (lambda I + sum_{i<=t} z_i z_i^T)^{-1} sum_{i<t} y_i z_i.
struct vaw_state {
  sym_matrix S;
  sym_matrix S_inv;
  vec b;          // sum of y_i z_i over observed labels
  vec x;          // latest prediction
  vec z_pending;  // feature awaiting its label
  double lambda;
  bool awaiting_label = false;
  int t = 0;  // completed feature/label pairs
  int updates_since_refactor = 0;
};

vaw_state make_vaw(std::size_t d, double lambda);
// Feature first, label second; calls must alternate.
vaw_state vaw_predict(const vaw_state& state, const vec& z);
vaw_state vaw_observe(const vaw_state& state, double y);

}  // namespace oco
