#include "oco/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace oco {

namespace {

void check_dim(std::size_t want, const vec& x) {
  if (x.size() != want) throw std::invalid_argument("loss/prediction dimension mismatch");
}

// ln(1 + e^u) without overflow for large |u|
double softplus(double u) {
  if (u > 0) return u + std::log1p(std::exp(-u));
  return std::log1p(std::exp(u));
}

double sigmoid(double u) {
  if (u >= 0) return 1.0 / (1.0 + std::exp(-u));
  double e = std::exp(u);
  return e / (1.0 + e);
}

}  // namespace

std::size_t loss_dim(const loss_spec& loss) {
  return std::visit(
      [](const auto& f) -> std::size_t {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, linear_loss>) return f.g.size();
        if constexpr (std::is_same_v<T, squared_distance_loss>) return f.y.size();
        if constexpr (std::is_same_v<T, absolute_loss>) return 1;
        if constexpr (std::is_same_v<T, hinge_loss>) return f.z.size();
        if constexpr (std::is_same_v<T, hinge_power_loss>) return f.z.size();
        if constexpr (std::is_same_v<T, logistic_loss>) return f.z.size();
        if constexpr (std::is_same_v<T, log_wealth_loss>) return 1;
      },
      loss.form);
}

double evaluate(const loss_spec& loss, const vec& x) {
  check_dim(loss_dim(loss), x);
  const double s = loss.scale;
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, linear_loss>) {
          return s * dot(f.g, x);
        } else if constexpr (std::is_same_v<T, squared_distance_loss>) {
          return s * norm2_sq(sub(x, f.y));
        } else if constexpr (std::is_same_v<T, absolute_loss>) {
          return s * std::fabs(x[0] - f.y);
        } else if constexpr (std::is_same_v<T, hinge_loss>) {
          return s * std::max(1.0 - f.y * dot(f.z, x), 0.0);
        } else if constexpr (std::is_same_v<T, hinge_power_loss>) {
          return s * std::pow(std::max(1.0 - f.y * dot(f.z, x), 0.0), f.q);
        } else if constexpr (std::is_same_v<T, logistic_loss>) {
          return s * softplus(-f.y * dot(f.z, x));
        } else {  // log_wealth_loss
          const double w = 1.0 + f.c * x[0];
          if (w <= 0.0) throw std::domain_error("log wealth loss needs 1 + c*x > 0");
          return s * -std::log(w);
        }
      },
      loss.form);
}

vec subgradient(const loss_spec& loss, const vec& x) {
  check_dim(loss_dim(loss), x);
  const double s = loss.scale;
  return std::visit(
      [&](const auto& f) -> vec {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, linear_loss>) {
          return scaled(f.g, s);
        } else if constexpr (std::is_same_v<T, squared_distance_loss>) {
          return scaled(sub(x, f.y), 2.0 * s);
        } else if constexpr (std::is_same_v<T, absolute_loss>) {
          const double d = x[0] - f.y;
          if (d > 0) return {s};
          if (d < 0) return {-s};
          return {0.0};  // kink
        } else if constexpr (std::is_same_v<T, hinge_loss>) {
          if (1.0 - f.y * dot(f.z, x) > 0.0) return scaled(f.z, -s * f.y);
          return zeros(f.z.size());  // boundary and inactive side
        } else if constexpr (std::is_same_v<T, hinge_power_loss>) {
          const double h = 1.0 - f.y * dot(f.z, x);
          if (h > 0.0) return scaled(f.z, -s * f.y * f.q * std::pow(h, f.q - 1.0));
          return zeros(f.z.size());
        } else if constexpr (std::is_same_v<T, logistic_loss>) {
          const double m = f.y * dot(f.z, x);
          return scaled(f.z, -s * f.y * sigmoid(-m));
        } else {  // log_wealth_loss
          const double w = 1.0 + f.c * x[0];
          if (w <= 0.0) throw std::domain_error("log wealth loss needs 1 + c*x > 0");
          return {s * -f.c / w};
        }
      },
      loss.form);
}

}  // namespace oco
