#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oco {

using vec = std::vector<double>;

inline double dot(const vec& a, const vec& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2_sq(const vec& a) { return dot(a, a); }

inline double norm2(const vec& a) { return std::sqrt(norm2_sq(a)); }

inline double norm1(const vec& a) {
  double s = 0.0;
  for (double v : a) s += std::fabs(v);
  return s;
}

inline double norm_inf(const vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

inline double norm_p(const vec& a, double p) {
  double s = 0.0;
  for (double v : a) s += std::pow(std::fabs(v), p);
  return std::pow(s, 1.0 / p);
}

// y += alpha * x
inline void axpy(double alpha, const vec& x, vec& y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline vec scaled(const vec& a, double c) {
  vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return out;
}

inline vec add(const vec& a, const vec& b) {
  assert(a.size() == b.size());
  vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline vec sub(const vec& a, const vec& b) {
  assert(a.size() == b.size());
  vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline bool all_finite(const vec& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

inline vec zeros(std::size_t d) { return vec(d, 0.0); }

}  // namespace oco
