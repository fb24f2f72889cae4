#include "oco/second_order.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace oco {

namespace {

constexpr int refactor_period = 512;  // full inverse recompute cadence
constexpr double kkt_tol = 1e-10;

using dense = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<dense> as_matrix(sym_matrix& m, std::size_t d) {
  return Eigen::Map<dense>(m.data(), static_cast<Eigen::Index>(d),
                           static_cast<Eigen::Index>(d));
}

Eigen::Map<const dense> as_matrix(const sym_matrix& m, std::size_t d) {
  return Eigen::Map<const dense>(m.data(), static_cast<Eigen::Index>(d),
                                 static_cast<Eigen::Index>(d));
}

sym_matrix identity_scaled(std::size_t d, double lambda) {
  sym_matrix m(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) m[i * d + i] = lambda;
  return m;
}

vec matvec(const sym_matrix& m, const vec& v) {
  const std::size_t d = v.size();
  vec out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += m[i * d + j] * v[j];
    out[i] = s;
  }
  return out;
}

// S <- S + c u u^T together with the Sherman-Morrison update of the inverse:
// S_inv <- S_inv - c (S_inv u)(S_inv u)^T / (1 + c u^T S_inv u)
void rank_one_update(sym_matrix& S, sym_matrix& S_inv, const vec& u, double c) {
  const std::size_t d = u.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) S[i * d + j] += c * u[i] * u[j];
  const vec w = matvec(S_inv, u);  // S_inv is symmetric, so S_inv u = u^T S_inv
  const double denom = 1.0 + c * dot(u, w);
  const double scale = c / denom;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) S_inv[i * d + j] -= scale * w[i] * w[j];
}

void refactor_inverse(const sym_matrix& S, sym_matrix& S_inv, std::size_t d) {
  auto Sm = as_matrix(S, d);
  dense inv = Sm.llt().solve(dense::Identity(static_cast<Eigen::Index>(d),
                                             static_cast<Eigen::Index>(d)));
  auto out = as_matrix(S_inv, d);
  out = inv;
}

// x(nu) = (S + nu I)^{-1} rhs
vec shifted_solve(const sym_matrix& S, const vec& rhs, double nu) {
  const std::size_t d = rhs.size();
  dense A = as_matrix(S, d);
  for (std::size_t i = 0; i < d; ++i) A(i, i) += nu;
  Eigen::VectorXd r(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) r[static_cast<Eigen::Index>(i)] = rhs[i];
  Eigen::VectorXd sol = A.llt().solve(r);
  vec out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = sol[static_cast<Eigen::Index>(i)];
  return out;
}

// Minimizer of 0.5 x^T S x - <rhs, x> over the radius-r ball. The norm of
// x(nu) decreases in nu, so the multiplier is found by bisection on
// ||x(nu)|| = r once the unconstrained point falls outside.
vec ball_solve(const sym_matrix& S, const sym_matrix& S_inv, const vec& rhs, double radius) {
  vec x = matvec(S_inv, rhs);
  if (norm2(x) <= radius) return x;
  double lo = 0.0, hi = 1.0;
  while (norm2(shifted_solve(S, rhs, hi)) > radius) {
    hi *= 2.0;
    if (hi > 1e80) throw std::runtime_error("ball multiplier search failed to bracket");
  }
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    x = shifted_solve(S, rhs, mid);
    const double f = norm2(x) - radius;
    if (std::fabs(f) <= kkt_tol) return x;
    (f > 0.0 ? lo : hi) = mid;
  }
  return shifted_solve(S, rhs, 0.5 * (lo + hi));
}

void check_vector(const vec& v, std::size_t d, const char* what) {
  if (v.size() != d) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  if (!all_finite(v)) throw std::invalid_argument(std::string(what) + ": must be finite");
}

}  // namespace

ons_state make_ons(std::size_t d, feasible_set set, double lambda, double mu) {
  if (d == 0) throw std::invalid_argument("need at least one coordinate");
  if (!(lambda > 0.0) || !(mu > 0.0))
    throw std::invalid_argument("lambda and mu must be positive");
  if (!std::holds_alternative<all_of_space>(set) && !std::holds_alternative<l2_ball>(set))
    throw std::invalid_argument("supported sets: all of space, l2 ball");
  ons_state s;
  s.grad_sum = zeros(d);
  s.b = zeros(d);
  s.S = identity_scaled(d, lambda);
  s.S_inv = identity_scaled(d, 1.0 / lambda);
  s.x = zeros(d);
  s.lambda = lambda;
  s.mu = mu;
  s.set = std::move(set);
  return s;
}

ons_state ons_step(const ons_state& state, const vec& g, const vec& x_obs) {
  const std::size_t d = state.grad_sum.size();
  check_vector(g, d, "gradient");
  check_vector(x_obs, d, "observation point");
  ons_state next = state;

  rank_one_update(next.S, next.S_inv, g, next.mu);
  next.updates_since_refactor += 1;
  if (next.updates_since_refactor >= refactor_period) {
    refactor_inverse(next.S, next.S_inv, d);
    next.updates_since_refactor = 0;
  }
  const double scale = next.mu * dot(g, x_obs);
  for (std::size_t j = 0; j < d; ++j) {
    next.b[j] += scale * g[j];
    next.grad_sum[j] += g[j];
  }
  next.t += 1;

  const vec rhs = sub(next.b, next.grad_sum);
  if (const auto* ball = std::get_if<l2_ball>(&next.set))
    next.x = ball_solve(next.S, next.S_inv, rhs, ball->radius);
  else
    next.x = matvec(next.S_inv, rhs);
  return next;
}

double logistic_exp_concavity(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  return 0.5 * std::exp(-2.0 * radius);
}

vaw_state make_vaw(std::size_t d, double lambda) {
  if (d == 0) throw std::invalid_argument("need at least one coordinate");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  vaw_state s;
  s.S = identity_scaled(d, lambda);
  s.S_inv = identity_scaled(d, 1.0 / lambda);
  s.b = zeros(d);
  s.x = zeros(d);
  s.lambda = lambda;
  return s;
}

vaw_state vaw_predict(const vaw_state& state, const vec& z) {
  const std::size_t d = state.b.size();
  check_vector(z, d, "feature");
  if (state.awaiting_label)
    throw std::logic_error("previous feature still awaits its label");
  vaw_state next = state;
  rank_one_update(next.S, next.S_inv, z, 1.0);
  next.updates_since_refactor += 1;
  if (next.updates_since_refactor >= refactor_period) {
    refactor_inverse(next.S, next.S_inv, d);
    next.updates_since_refactor = 0;
  }
  next.x = matvec(next.S_inv, next.b);
  next.z_pending = z;
  next.awaiting_label = true;
  return next;
}

vaw_state vaw_observe(const vaw_state& state, double y) {
  if (!state.awaiting_label) throw std::logic_error("no feature awaiting a label");
  if (!std::isfinite(y)) throw std::invalid_argument("label must be finite");
  vaw_state next = state;
  for (std::size_t j = 0; j < next.b.size(); ++j) next.b[j] += y * next.z_pending[j];
  next.awaiting_label = false;
  next.t += 1;
  return next;
}

}  // namespace oco
