#include "oco/parameter_free.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "oco/geometry.hpp"

namespace oco {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("initial money must be positive and finite");
  }
}

void check_dim(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("dimension must be at least 1");
}

void check_size(const vec& g, std::size_t dim) {
  if (g.size() != dim) {
    throw std::invalid_argument("gradient has size " + std::to_string(g.size()) +
                                ", expected " + std::to_string(dim));
  }
}

}  // namespace

betting_state make_kt_bettor(double epsilon) {
  check_epsilon(epsilon);
  return betting_state{epsilon, 0.0, epsilon, 0, bettor_kind::kt, 0};
}

betting_state make_shifted_bettor(double epsilon, std::size_t horizon) {
  check_epsilon(epsilon);
  if (horizon == 0) throw std::invalid_argument("shifted bettor needs a positive horizon");
  return betting_state{epsilon, 0.0, epsilon, 0, bettor_kind::shifted, horizon};
}

double kt_bet(const betting_state& state) {
  if (state.kind != bettor_kind::kt) throw std::logic_error("kt_bet on a non-kt bettor");
  // Fraction coin_sum / (rounds played so far + 1); |coin_sum| <= t keeps the
  // fraction in (-1, 1), hence |bet| < wealth.
  return state.coin_sum / static_cast<double>(state.t + 1) * state.wealth;
}

double shifted_bet(const betting_state& state) {
  if (state.kind != bettor_kind::shifted) {
    throw std::logic_error("shifted_bet on a non-shifted bettor");
  }
  if (state.t >= state.horizon) {
    throw std::out_of_range("shifted bettor asked to bet past its horizon");
  }
  // The potential behind this scheme is F_t(x) = eps * exp(x^2 / (2(t + T)) - s_t)
  // with s_t a constant independent of x, and the fraction is
  // (F_t(S + 1) - F_t(S - 1)) / (F_t(S + 1) + F_t(S - 1)) at S = coin_sum.
  // Both F values share the factor eps * exp((S^2 + 1) / (2(t + T)) - s_t), so
  // the ratio collapses to (e^r - e^{-r}) / (e^r + e^{-r}) = tanh(r) with
  // r = S / (t + T), where t is the 1-based index of the upcoming round.
  double tau = static_cast<double>(state.t + 1 + state.horizon);
  return std::tanh(state.coin_sum / tau) * state.wealth;
}

double next_bet(const betting_state& state) {
  return state.kind == bettor_kind::kt ? kt_bet(state) : shifted_bet(state);
}

betting_state observe_coin(const betting_state& state, double c) {
  if (!(std::fabs(c) <= 1.0)) throw std::invalid_argument("coin outside [-1, 1]");
  double bet = next_bet(state);
  betting_state next = state;
  next.wealth = state.wealth + c * bet;
  next.coin_sum = state.coin_sum + c;
  next.t = state.t + 1;
  return next;
}

kt_oco_state make_kt_oco(double epsilon) { return kt_oco_state{make_kt_bettor(epsilon), 0.0}; }

kt_oco_state kt_oco_step(const kt_oco_state& state, double g) {
  if (!(std::fabs(g) <= 1.0)) throw std::invalid_argument("gradient outside [-1, 1]");
  kt_oco_state next = state;
  next.bettor = observe_coin(state.bettor, -g);
  next.x = kt_bet(next.bettor);
  return next;
}

coord_kt_state make_coord_kt(std::size_t dim) {
  check_dim(dim);
  return make_coord_kt(dim, 1.0 / static_cast<double>(dim));
}

coord_kt_state make_coord_kt(std::size_t dim, double epsilon_per_coord) {
  check_dim(dim);
  coord_kt_state state;
  state.coords.assign(dim, make_kt_oco(epsilon_per_coord));
  state.x = zeros(dim);
  return state;
}

coord_kt_state coord_kt_step(const coord_kt_state& state, const vec& g) {
  check_size(g, state.coords.size());
  if (!(norm_inf(g) <= 1.0)) {
    throw std::invalid_argument("gradient coordinates must lie in [-1, 1]");
  }
  coord_kt_state next = state;
  for (std::size_t i = 0; i < g.size(); ++i) {
    next.coords[i] = kt_oco_step(state.coords[i], g[i]);
    next.x[i] = next.coords[i].x;
  }
  return next;
}

dir_mag_state make_dir_mag(std::size_t dim, double epsilon, stepsize_policy direction_policy) {
  check_dim(dim);
  return dir_mag_state{make_kt_oco(epsilon),
                       make_osd(zeros(dim), l2_ball{1.0}, std::move(direction_policy))};
}

vec dir_mag_prediction(const dir_mag_state& state) {
  return scaled(state.direction.x, state.magnitude.x);
}

dir_mag_state dir_mag_step(const dir_mag_state& state, const vec& g) {
  check_size(g, state.direction.x.size());
  // |<g, direction>| <= ||g||_2 <= 1 mathematically; the clamp only absorbs
  // the last-ulp overshoot projection rounding can leave on the direction.
  double s = std::clamp(dot(g, state.direction.x), -1.0, 1.0);
  dir_mag_state next = state;
  next.magnitude = kt_oco_step(state.magnitude, s);
  next.direction = osd_step(state.direction, g);
  return next;
}

namespace {

// A shifted bettor has nothing left to wager after its final round; the
// experts reduction then keeps a zero bet so the prediction stays defined,
// while settling any further coin still fails inside observe_coin.
double upcoming_bet(const betting_state& state) {
  if (state.kind == bettor_kind::shifted && state.t >= state.horizon) return 0.0;
  return next_bet(state);
}

// prior_i * max(bet_i, 0), normalized; all-zero mass falls back to the prior.
void refresh_experts_prediction(betting_experts_state& state) {
  double total = 0.0;
  for (std::size_t i = 0; i < state.prior.size(); ++i) {
    state.p[i] = state.prior[i] * std::max(state.bets[i], 0.0);
    total += state.p[i];
  }
  if (total > 0.0) {
    for (double& pi : state.p) pi /= total;
  } else {
    state.p = state.prior;
  }
}

}  // namespace

betting_experts_state make_betting_experts(vec prior, bettor_kind kind, std::size_t horizon,
                                           double epsilon) {
  if (prior.size() < 2) throw std::invalid_argument("need at least two experts");
  if (!contains(simplex{prior.size()}, prior)) {
    throw std::invalid_argument("prior must lie on the probability simplex");
  }
  betting_experts_state state;
  state.prior = std::move(prior);
  std::size_t d = state.prior.size();
  state.bettors.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    state.bettors.push_back(kind == bettor_kind::kt ? make_kt_bettor(epsilon)
                                                    : make_shifted_bettor(epsilon, horizon));
  }
  state.bets = zeros(d);
  for (std::size_t i = 0; i < d; ++i) state.bets[i] = upcoming_bet(state.bettors[i]);
  state.p = zeros(d);
  refresh_experts_prediction(state);
  return state;
}

betting_experts_state betting_experts_step(const betting_experts_state& state, const vec& g) {
  check_size(g, state.prior.size());
  for (double gi : g) {
    if (!(gi >= 0.0 && gi <= 1.0)) throw std::invalid_argument("losses must lie in [0, 1]");
  }
  betting_experts_state next = state;
  double mix = dot(g, state.p);
  for (std::size_t i = 0; i < g.size(); ++i) {
    // Experts currently out of the prediction (bet <= 0) only ever gain, so
    // they can re-enter once they start outperforming the mixture.
    double c = mix - g[i];
    if (!(state.bets[i] > 0.0)) c = std::max(c, 0.0);
    next.bettors[i] = observe_coin(state.bettors[i], c);
    next.bets[i] = upcoming_bet(next.bettors[i]);
  }
  refresh_experts_prediction(next);
  return next;
}

namespace {

class zero_learner final : public olo_learner {
 public:
  explicit zero_learner(std::size_t dim) : dim_(dim) { check_dim(dim); }
  std::size_t dim() const override { return dim_; }
  vec predict() const override { return zeros(dim_); }
  void observe(const vec& g) override { check_size(g, dim_); }

 private:
  std::size_t dim_;
};

class kt_oco_learner final : public olo_learner {
 public:
  explicit kt_oco_learner(double epsilon) : state_(make_kt_oco(epsilon)) {}
  std::size_t dim() const override { return 1; }
  vec predict() const override { return vec{state_.x}; }
  void observe(const vec& g) override {
    check_size(g, 1);
    state_ = kt_oco_step(state_, g[0]);
  }

 private:
  kt_oco_state state_;
};

class coord_kt_learner final : public olo_learner {
 public:
  explicit coord_kt_learner(coord_kt_state state) : state_(std::move(state)) {}
  std::size_t dim() const override { return state_.coords.size(); }
  vec predict() const override { return state_.x; }
  void observe(const vec& g) override { state_ = coord_kt_step(state_, g); }

 private:
  coord_kt_state state_;
};

class dir_mag_learner final : public olo_learner {
 public:
  explicit dir_mag_learner(dir_mag_state state) : state_(std::move(state)) {}
  std::size_t dim() const override { return state_.direction.x.size(); }
  vec predict() const override { return dir_mag_prediction(state_); }
  void observe(const vec& g) override { state_ = dir_mag_step(state_, g); }

 private:
  dir_mag_state state_;
};

class combined_learner final : public olo_learner {
 public:
  combined_learner(learner_ptr a, learner_ptr b) : a_(std::move(a)), b_(std::move(b)) {
    if (!a_ || !b_) throw std::invalid_argument("combine needs two learners");
    if (a_->dim() != b_->dim()) throw std::invalid_argument("combined learners disagree on dimension");
  }
  std::size_t dim() const override { return a_->dim(); }
  vec predict() const override { return add(a_->predict(), b_->predict()); }
  void observe(const vec& g) override {
    a_->observe(g);
    b_->observe(g);
  }

 private:
  learner_ptr a_, b_;
};

}  // namespace

learner_ptr make_zero_learner(std::size_t dim) { return std::make_unique<zero_learner>(dim); }

learner_ptr make_kt_oco_learner(double epsilon) {
  return std::make_unique<kt_oco_learner>(epsilon);
}

learner_ptr make_coord_kt_learner(std::size_t dim) {
  return std::make_unique<coord_kt_learner>(make_coord_kt(dim));
}

learner_ptr make_coord_kt_learner(std::size_t dim, double epsilon_per_coord) {
  return std::make_unique<coord_kt_learner>(make_coord_kt(dim, epsilon_per_coord));
}

learner_ptr make_dir_mag_learner(std::size_t dim, double epsilon,
                                 stepsize_policy direction_policy) {
  return std::make_unique<dir_mag_learner>(
      make_dir_mag(dim, epsilon, std::move(direction_policy)));
}

learner_ptr combine(learner_ptr a, learner_ptr b) {
  return std::make_unique<combined_learner>(std::move(a), std::move(b));
}

}  // namespace oco
