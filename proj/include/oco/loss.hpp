#pragma once

#include <cstddef>
#include <variant>

#include "oco/vec.hpp"

namespace oco {

// Tagged per-round loss descriptions, rich enough to evaluate and to take a
// subgradient. `scale` multiplies the base loss and carries per-round weights
// (e.g. the alpha_t of weighted online-to-batch averaging).

struct linear_loss {
  vec g;  // <g, x>
};

struct squared_distance_loss {
  vec y;  // ||x - y||_2^2
};

struct absolute_loss {
  double y;  // |x - y|, one-dimensional
};

struct hinge_loss {
  vec z;
  int y;  // label in {-1, +1}; max(1 - y<z,x>, 0)
};

struct hinge_power_loss {
  vec z;
  int y;
  double q;  // q >= 1; max(1 - y<z,x>, 0)^q
};

struct logistic_loss {
  vec z;
  int y;  // ln(1 + exp(-y<z,x>))
};

struct log_wealth_loss {
  double c;  // coin in [-1,1]; -ln(1 + c x), one-dimensional
};

using loss_form =
    std::variant<linear_loss, squared_distance_loss, absolute_loss, hinge_loss,
                 hinge_power_loss, logistic_loss, log_wealth_loss>;

struct loss_spec {
  loss_form form;
  double scale = 1.0;  // > 0
};

// Dimension of the prediction the loss expects.
std::size_t loss_dim(const loss_spec& loss);

// scale * base loss. Throws std::invalid_argument on dimension
// mismatch and std::domain_error when log_wealth sees 1 + c*x <= 0.
double evaluate(const loss_spec& loss, const vec& x);

// One element of the subdifferential, times scale. Nondifferentiable points
// use a fixed selection: absolute value returns 0 at the kink, hinge returns
// the zero vector on the boundary, so updates are no-ops at optima.
vec subgradient(const loss_spec& loss, const vec& x);

}  // namespace oco
