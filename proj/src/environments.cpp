#include "oco/environments.hpp"

#include <cmath>
#include <stdexcept>

#include "oco/rng.hpp"

namespace oco {

namespace {

struct kind_validator {
  void operator()(const guessing_game& g) const {
    if (g.y.empty()) throw std::invalid_argument("guessing game needs at least one target");
    for (double v : g.y) {
      if (!(v >= 0.0) || !(v <= 1.0)) {
        throw std::invalid_argument("guessing game targets must lie in [0, 1]");
      }
    }
  }
  void operator()(const ftl_failure&) const {}
  void operator()(const rademacher_olo& r) const {
    if (!(r.lipschitz > 0.0) || !std::isfinite(r.lipschitz)) {
      throw std::invalid_argument("lipschitz constant must be positive");
    }
    if (!(r.diameter > 0.0) || !std::isfinite(r.diameter)) {
      throw std::invalid_argument("diameter must be positive");
    }
    if (r.direction.empty() || !all_finite(r.direction) || !(norm2(r.direction) > 0.0)) {
      throw std::invalid_argument("direction must be a nonzero finite vector");
    }
  }
  void operator()(const iid_linear& l) const {
    if (l.mean.empty() || !all_finite(l.mean)) {
      throw std::invalid_argument("mean must be a finite nonempty vector");
    }
    if (!(l.sigma >= 0.0) || !std::isfinite(l.sigma)) {
      throw std::invalid_argument("noise scale must be nonnegative");
    }
  }
  void operator()(const stochastic_arms& s) const {
    if (s.arms.size() < 2) throw std::invalid_argument("need at least two arms");
    for (const auto& arm : s.arms) validate(arm);
  }
  void operator()(const fixed_convex& f) const {
    if (!(f.loss.scale > 0.0) || !std::isfinite(f.loss.scale)) {
      throw std::invalid_argument("loss scale must be positive");
    }
  }
};

}  // namespace

environment make_environment(environment_kind kind, std::uint64_t seed) {
  std::visit(kind_validator{}, kind);
  if (auto* r = std::get_if<rademacher_olo>(&kind)) {
    const double n = norm2(r->direction);
    for (double& v : r->direction) v /= n;
  }
  return environment{std::move(kind), seed};
}

std::size_t env_dim(const environment& env) {
  return std::visit(
      [](const auto& kind) -> std::size_t {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, guessing_game>) {
          return 1;
        } else if constexpr (std::is_same_v<T, ftl_failure>) {
          return 1;
        } else if constexpr (std::is_same_v<T, rademacher_olo>) {
          return kind.direction.size();
        } else if constexpr (std::is_same_v<T, iid_linear>) {
          return kind.mean.size();
        } else if constexpr (std::is_same_v<T, stochastic_arms>) {
          return kind.arms.size();
        } else {
          return loss_dim(kind.loss);
        }
      },
      env.kind);
}

loss_spec next_loss(const environment& env, std::size_t t) {
  if (t == 0) throw std::invalid_argument("rounds are 1-based");
  return std::visit(
      [&](const auto& kind) -> loss_spec {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, guessing_game>) {
          if (t > kind.y.size()) throw std::out_of_range("guessing game targets exhausted");
          return {squared_distance_loss{vec{kind.y[t - 1]}}, 1.0};
        } else if constexpr (std::is_same_v<T, ftl_failure>) {
          const double z = t == 1 ? -0.5 : (t % 2 == 0 ? 1.0 : -1.0);
          return {linear_loss{vec{z}}, 1.0};
        } else if constexpr (std::is_same_v<T, rademacher_olo>) {
          auto rng = make_rng(derive_seed(env.seed, t));
          const double eps = rademacher(rng);
          return {linear_loss{scaled(kind.direction, kind.lipschitz * eps)}, 1.0};
        } else if constexpr (std::is_same_v<T, iid_linear>) {
          auto rng = make_rng(derive_seed(env.seed, t));
          vec g = kind.mean;
          for (double& v : g) v += kind.sigma * normal(rng);
          return {linear_loss{std::move(g)}, 1.0};
        } else if constexpr (std::is_same_v<T, stochastic_arms>) {
          auto rng = make_rng(derive_seed(env.seed, t));
          vec g(kind.arms.size());
          for (std::size_t i = 0; i < g.size(); ++i) g[i] = sample_loss(kind.arms[i], rng);
          return {linear_loss{std::move(g)}, 1.0};
        } else {
          return kind.loss;
        }
      },
      env.kind);
}

std::vector<double> o2b_weights(std::size_t horizon, o2b_weighting kind) {
  std::vector<double> weights(horizon);
  for (std::size_t t = 1; t <= horizon; ++t) {
    const double td = static_cast<double>(t);
    switch (kind) {
      case o2b_weighting::uniform:
        weights[t - 1] = 1.0;
        break;
      case o2b_weighting::inv_sqrt_t:
        weights[t - 1] = 1.0 / std::sqrt(td);
        break;
      case o2b_weighting::linear_t:
        weights[t - 1] = td;
        break;
    }
  }
  return weights;
}

batch_conversion_result online_to_batch(olo_learner& learner, const loss_sampler& sampler,
                                        std::size_t horizon, const std::vector<double>& weights,
                                        const objective_fn& objective) {
  if (horizon == 0) throw std::invalid_argument("horizon must be positive");
  if (weights.size() != horizon) {
    throw std::invalid_argument("need exactly one weight per round");
  }
  for (double a : weights) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("averaging weights must be positive");
    }
  }
  if (!sampler || !objective) throw std::invalid_argument("sampler and objective are required");

  vec weighted_sum = zeros(learner.dim());
  double weight_total = 0.0;
  for (std::size_t t = 1; t <= horizon; ++t) {
    const vec x = learner.predict();
    loss_spec loss = sampler(t);
    loss.scale *= weights[t - 1];
    learner.observe(subgradient(loss, x));
    axpy(weights[t - 1], x, weighted_sum);
    weight_total += weights[t - 1];
  }
  batch_conversion_result result;
  result.average = scaled(weighted_sum, 1.0 / weight_total);
  result.weights = weights;
  result.objective = objective(result.average);
  return result;
}

}  // namespace oco
