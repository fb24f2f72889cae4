#include "oco/mirror_descent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oco {

eg_state make_eg(std::size_t d, double eta) {
  if (d == 0) throw std::invalid_argument("need at least one coordinate");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("eta must be positive");
  eg_state s;
  s.x = vec(d, 1.0 / static_cast<double>(d));
  s.eta = eta;
  return s;
}

eg_state eg_step(const eg_state& state, const vec& g) {
  if (g.size() != state.x.size()) throw std::invalid_argument("gradient dimension mismatch");
  if (!all_finite(g)) throw std::invalid_argument("gradient must be finite");

  eg_state next = state;
  double m = -state.eta * g[0];
  for (std::size_t j = 1; j < g.size(); ++j) m = std::max(m, -state.eta * g[j]);
  double z = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    next.x[j] = state.x[j] * std::exp(-state.eta * g[j] - m);
    z += next.x[j];
  }
  for (auto& v : next.x) v /= z;
  next.t += 1;
  return next;
}

pnorm_state make_pnorm(vec x0, double p, double eta) {
  if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("p must lie in (1,2]");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("eta must be positive");
  pnorm_state s;
  s.x = std::move(x0);
  s.p = p;
  s.eta = eta;
  return s;
}

pnorm_state pnorm_step(const pnorm_state& state, const vec& g) {
  if (g.size() != state.x.size()) throw std::invalid_argument("gradient dimension mismatch");
  if (!all_finite(g)) throw std::invalid_argument("gradient must be finite");

  pnorm_state next = state;
  vec theta = pnorm_dual_map(state.x, state.p);
  for (std::size_t j = 0; j < theta.size(); ++j) theta[j] -= state.eta * g[j];
  next.x = pnorm_dual_map_inverse(theta, state.p);
  next.t += 1;
  return next;
}

std::size_t sample_expert_from_uniform(const vec& x, double u) {
  if (x.empty()) throw std::invalid_argument("empty distribution");
  if (!all_finite(x)) throw std::invalid_argument("distribution must be finite");
  double c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    c += x[i];
    if (u < c) return i;
  }
  return x.size() - 1;  // u landed past the last partial sum by rounding
}

std::size_t sample_expert(const vec& x, rng_engine& rng) {
  return sample_expert_from_uniform(x, uniform01(rng));
}

}  // namespace oco
