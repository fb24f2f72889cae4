#include "oco/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace oco {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool box_valid(const box& b) {
  if (b.lo.size() != b.hi.size()) return false;
  for (std::size_t i = 0; i < b.lo.size(); ++i)
    if (b.lo[i] > b.hi[i]) return false;
  return true;
}

}  // namespace

bool contains(const feasible_set& set, const vec& v) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, all_of_space>) {
          return true;
        } else if constexpr (std::is_same_v<T, l2_ball>) {
          return norm2(v) <= s.radius * (1.0 + 4.0 * kEps);
        } else if constexpr (std::is_same_v<T, box>) {
          if (v.size() != s.lo.size()) return false;
          for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] < s.lo[i] || v[i] > s.hi[i]) return false;
          return true;
        } else {  // simplex
          if (v.size() != s.dim) return false;
          double sum = 0.0;
          for (double x : v) {
            if (x < 0.0) return false;
            sum += x;
          }
          return std::fabs(sum - 1.0) <= 8.0 * kEps * static_cast<double>(s.dim);
        }
      },
      set);
}

vec project(const feasible_set& set, const vec& v) {
  // feasible points pass through untouched so projection is exactly
  // idempotent despite rounding
  if (contains(set, v)) return v;

  return std::visit(
      [&](const auto& s) -> vec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, all_of_space>) {
          return v;
        } else if constexpr (std::is_same_v<T, l2_ball>) {
          return scaled(v, s.radius / norm2(v));
        } else if constexpr (std::is_same_v<T, box>) {
          if (!box_valid(s)) throw std::invalid_argument("box with lo > hi");
          if (v.size() != s.lo.size()) throw std::invalid_argument("box dimension mismatch");
          vec out(v.size());
          for (std::size_t i = 0; i < v.size(); ++i)
            out[i] = std::min(std::max(v[i], s.lo[i]), s.hi[i]);
          return out;
        } else {  // simplex: sort-then-threshold water filling, O(d log d)
          if (v.size() != s.dim) throw std::invalid_argument("simplex dimension mismatch");
          vec u = v;
          std::sort(u.begin(), u.end(), std::greater<double>());
          // the active set {j : u_j > (sum_{i<=j} u_i - 1)/j} is a prefix;
          // tau is the threshold at its end
          double tau = 0.0, running = 0.0;
          for (std::size_t j = 0; j < u.size(); ++j) {
            running += u[j];
            const double t = (running - 1.0) / static_cast<double>(j + 1);
            if (u[j] - t > 0.0) tau = t;
          }
          vec out(v.size());
          for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - tau, 0.0);
          return out;
        }
      },
      set);
}

double bregman(bregman_kind kind, const vec& x, const vec& y, double p) {
  if (x.size() != y.size()) throw std::invalid_argument("bregman dimension mismatch");
  switch (kind) {
    case bregman_kind::squared_l2:
      return 0.5 * norm2_sq(sub(x, y));
    case bregman_kind::negative_entropy: {
      // psi(x) = sum x ln x with 0 ln 0 = 0 in the first argument; the
      // second argument must be strictly positive (interior of the domain)
      double b = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (y[i] <= 0.0) throw std::domain_error("negative entropy needs y > 0");
        if (x[i] < 0.0) throw std::domain_error("negative entropy needs x >= 0");
        if (x[i] > 0.0) b += x[i] * std::log(x[i] / y[i]);
        b += y[i] - x[i];  // exact Bregman form; vanishes when both sum to 1
      }
      return b;
    }
    case bregman_kind::half_pnorm_sq: {
      if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("p must lie in (1,2]");
      const double psix = 0.5 * norm_p(x, p) * norm_p(x, p);
      const double psiy = 0.5 * norm_p(y, p) * norm_p(y, p);
      return psix - psiy - dot(pnorm_dual_map(y, p), sub(x, y));
    }
  }
  throw std::logic_error("unreachable");
}

vec pnorm_dual_map(const vec& x, double p) {
  if (p == 2.0) return x;  // identity map, bit for bit
  const double nx = norm_p(x, p);
  vec out(x.size(), 0.0);
  if (nx == 0.0) return out;  // map of the origin is the origin, by continuity
  const double f = std::pow(nx, 2.0 - p);
  for (std::size_t j = 0; j < x.size(); ++j)
    out[j] = (x[j] >= 0 ? 1.0 : -1.0) * std::pow(std::fabs(x[j]), p - 1.0) * f;
  return out;
}

vec pnorm_dual_map_inverse(const vec& theta, double p) {
  const double q = p / (p - 1.0);
  return pnorm_dual_map(theta, q);
}

double lambert_w(double x) {
  if (x < 0.0) throw std::domain_error("lambert_w needs x >= 0");
  if (x == 0.0) return 0.0;

  const double target_tol = 1e-12 * std::max(1.0, x) * 0.5;
  double w = std::log1p(x);  // upper end of the bracket, good seed everywhere

  // Halley iteration on f(w) = w e^w - x
  for (int it = 0; it < 50; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::fabs(f) <= target_tol) return w;
    const double f1 = ew * (w + 1.0);
    const double f2 = ew * (w + 2.0);
    const double step = f / (f1 - f * f2 / (2.0 * f1));
    w -= step;
    if (!(w > 0.0) || !std::isfinite(w)) break;  // fall back to bisection
  }

  double lo = 0.6321 * std::log1p(x);
  double hi = std::log1p(x);
  double fw = w > 0.0 && std::isfinite(w) ? w * std::exp(w) - x : 1.0;
  if (std::fabs(fw) <= target_tol) return w;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = mid * std::exp(mid) - x;
    if (std::fabs(f) <= target_tol) return mid;
    if (f > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double conj_exp_square(double theta, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("a and b must be positive");
  if (theta == 0.0) return -b;  // maximizer x = 0
  const double w = lambert_w(a * theta * theta / (b * b));
  const double sw = std::sqrt(w);
  return std::sqrt(a) * std::fabs(theta) * (sw - 1.0 / sw);
}

}  // namespace oco
