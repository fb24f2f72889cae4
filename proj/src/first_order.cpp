#include "oco/first_order.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace oco {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
}

// sum_{i<=t} mu_i with the last schedule entry repeating past the end
double mu_prefix_sum(const std::vector<double>& mu, int t) {
  double s = 0.0;
  const int n = static_cast<int>(mu.size());
  for (int i = 0; i < std::min(t, n); ++i) s += mu[static_cast<std::size_t>(i)];
  if (t > n) s += static_cast<double>(t - n) * mu.back();
  return s;
}

}  // namespace

void validate(const stepsize_policy& policy) {
  std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, constant_step>) {
          require_positive(p.eta, "eta");
        } else if constexpr (std::is_same_v<T, decaying_step>) {
          require_positive(p.diameter, "diameter");
          require_positive(p.lipschitz, "lipschitz");
        } else if constexpr (std::is_same_v<T, adaptive_global_step>) {
          require_positive(p.diameter, "diameter");
        } else {
          if (p.mu.empty()) throw std::invalid_argument("mu schedule must be non-empty");
          for (double m : p.mu) require_positive(m, "mu");
        }
      },
      policy);
}

double stepsize(const stepsize_policy& policy, int t, double grad_sq_sum) {
  if (t < 1) throw std::invalid_argument("round index starts at 1");
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, constant_step>) {
          return p.eta;
        } else if constexpr (std::is_same_v<T, decaying_step>) {
          return p.diameter / (p.lipschitz * std::sqrt(static_cast<double>(t)));
        } else if constexpr (std::is_same_v<T, adaptive_global_step>) {
          return std::sqrt(2.0) * p.diameter / (2.0 * std::sqrt(grad_sq_sum));
        } else {
          return 1.0 / mu_prefix_sum(p.mu, t);
        }
      },
      policy);
}

osd_state make_osd(vec x0, feasible_set set, stepsize_policy policy) {
  validate(policy);
  osd_state s;
  s.x = project(set, x0);
  s.set = std::move(set);
  s.policy = std::move(policy);
  return s;
}

osd_state osd_step(const osd_state& state, const vec& g) {
  if (g.size() != state.x.size()) throw std::invalid_argument("gradient dimension mismatch");
  if (!all_finite(g)) throw std::invalid_argument("gradient must be finite");

  osd_state next = state;
  next.grad_sq_sum += norm2_sq(g);
  next.t += 1;

  const bool adaptive = std::holds_alternative<adaptive_global_step>(state.policy);
  if (adaptive && next.grad_sq_sum == 0.0) return next;  // stepsize undefined, stay put

  const double eta = stepsize(next.policy, next.t, next.grad_sq_sum);
  vec moved = next.x;
  axpy(-eta, g, moved);
  next.x = project(next.set, moved);
  return next;
}

adagrad_state make_adagrad(vec x0, box domain) {
  if (domain.lo.size() != x0.size()) throw std::invalid_argument("box dimension mismatch");
  adagrad_state s;
  s.x = project(feasible_set{domain}, x0);
  s.domain = std::move(domain);
  s.per_coord_sq = zeros(x0.size());
  return s;
}

adagrad_state adagrad_step(const adagrad_state& state, const vec& g) {
  if (g.size() != state.x.size()) throw std::invalid_argument("gradient dimension mismatch");
  if (!all_finite(g)) throw std::invalid_argument("gradient must be finite");

  adagrad_state next = state;
  next.t += 1;
  const double half_sqrt2 = 0.5 * std::sqrt(2.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double gsq = g[i] * g[i];
    next.per_coord_sq[i] += gsq;
    const double s = next.per_coord_sq[i];
    if (s == 0.0) continue;  // coordinate never touched by a gradient yet
    // The move is written as a single quotient g_i^2 / S_i so that a common
    // positive factor c on the whole per-coordinate gradient stream cancels
    // bit-exactly whenever c*g_i and (c*g_i)^2 round to exact values: the
    // scaled quotient is then the same real number, hence the same double.
    const double width = state.domain.hi[i] - state.domain.lo[i];
    const double move = half_sqrt2 * width * std::copysign(std::sqrt(gsq / s), g[i]);
    next.x[i] = std::clamp(next.x[i] - move, state.domain.lo[i], state.domain.hi[i]);
  }
  return next;
}

}  // namespace oco
