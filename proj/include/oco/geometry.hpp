#pragma once

#include <cstddef>
#include <variant>

#include "oco/vec.hpp"

namespace oco {

// Feasible decision sets. Ball and simplex are centered/standard; box is an
// axis-aligned hyperrectangle.
struct all_of_space {};
struct l2_ball {
  double radius;  // > 0
};
struct box {
  vec lo, hi;  // lo <= hi coordinatewise
};
struct simplex {
  std::size_t dim;  // >= 2
};

using feasible_set = std::variant<all_of_space, l2_ball, box, simplex>;

// Membership up to a small floating-point margin.
bool contains(const feasible_set& set, const vec& v);

// Euclidean projection. Feasible inputs are returned unchanged (bit for bit),
// which also makes the map exactly idempotent.
vec project(const feasible_set& set, const vec& v);

enum class bregman_kind { squared_l2, negative_entropy, half_pnorm_sq };

// B(x; y) = psi(x) - psi(y) - <grad psi(y), x - y>. `p` is only read by
// half_pnorm_sq and must lie in (1, 2].
double bregman(bregman_kind kind, const vec& x, const vec& y, double p = 2.0);

// Gradient of psi(x) = 0.5 ||x||_p^2 and its inverse; the maps are inverses
// of each other with q = p / (p - 1). dual of 0 is 0.
vec pnorm_dual_map(const vec& x, double p);
vec pnorm_dual_map_inverse(const vec& theta, double p);

// W(x) >= 0 solving w * exp(w) = x for x >= 0.
// Residual |w exp(w) - x| <= 1e-12 * max(1, x).
double lambert_w(double x);

// Fenchel conjugate of f(x) = b * exp(x^2 / (2a)) evaluated at theta.
double conj_exp_square(double theta, double a, double b);

}  // namespace oco
