#pragma once

#include <cstddef>
#include <vector>

#include "oco/first_order.hpp"
#include "oco/learner.hpp"
#include "oco/vec.hpp"

namespace oco {

enum class bettor_kind { kt, shifted };

// One coin-betting account. Every betting scheme keeps |bet| < wealth, so
// wealth stays strictly positive; |coin_sum| <= t because coins live in
// [-1, 1].
struct betting_state {
  double wealth;        // money after the coins settled so far
  double coin_sum;      // running sum of coins
  double epsilon;       // initial money, > 0
  std::size_t t;        // coins settled so far
  bettor_kind kind;
  std::size_t horizon;  // shifted scheme only: rounds the potential is tuned for
};

betting_state make_kt_bettor(double epsilon);
betting_state make_shifted_bettor(double epsilon, std::size_t horizon);

// Signed amount wagered on the upcoming coin. kt_bet uses the fraction
// coin_sum / (t + 1); shifted_bet uses the shifted-potential fraction
// tanh(coin_sum / (t + 1 + horizon)) and refuses to bet past its horizon.
double kt_bet(const betting_state& state);
double shifted_bet(const betting_state& state);
double next_bet(const betting_state& state);

// Settle one coin c in [-1, 1] against the bet from next_bet.
betting_state observe_coin(const betting_state& state, double c);

// 1-d online convex optimization by betting on the negated gradients.
// x holds the prediction for the upcoming round.
struct kt_oco_state {
  betting_state bettor;
  double x;
};

kt_oco_state make_kt_oco(double epsilon = 1.0);

// Requires |g| <= 1 (caller scales by the Lipschitz constant).
kt_oco_state kt_oco_step(const kt_oco_state& state, double g);

// d independent 1-d instances, one per coordinate.
struct coord_kt_state {
  std::vector<kt_oco_state> coords;
  vec x;  // prediction for the upcoming round
};

// The one-argument form endows each coordinate with 1/dim so the total
// initial money stays 1 regardless of dimension.
coord_kt_state make_coord_kt(std::size_t dim);
coord_kt_state make_coord_kt(std::size_t dim, double epsilon_per_coord);

// Requires ||g||_inf <= 1.
coord_kt_state coord_kt_step(const coord_kt_state& state, const vec& g);

// Magnitude/direction split: a 1-d learner picks the scale z_t, a unit-ball
// learner picks the direction, and the played point is their product.
struct dir_mag_state {
  kt_oco_state magnitude;
  osd_state direction;  // lives on the unit l2 ball
};

dir_mag_state make_dir_mag(std::size_t dim, double epsilon = 1.0,
                           stepsize_policy direction_policy = adaptive_global_step{2.0});

// z_t * direction; zero on the first round because the 1-d learner starts at 0.
vec dir_mag_prediction(const dir_mag_state& state);

// Requires ||g||_2 <= 1 so the scalar <g, direction> fed to the 1-d learner
// stays in [-1, 1].
dir_mag_state dir_mag_step(const dir_mag_state& state, const vec& g);

// Experts reduction: one bettor per expert, prediction proportional to
// prior_i * max(bet_i, 0), falling back to the prior when no bettor bets a
// positive amount.
struct betting_experts_state {
  vec prior;                           // simplex vector
  std::vector<betting_state> bettors;  // one account per expert
  vec bets;                            // upcoming per-expert bets
  vec p;                               // prediction for the upcoming round
};

// horizon is only read by shifted bettors; epsilon is the per-expert initial
// money.
betting_experts_state make_betting_experts(vec prior, bettor_kind kind = bettor_kind::kt,
                                           std::size_t horizon = 0, double epsilon = 1.0);

// Requires g in [0, 1]^d. Experts with a positive bet receive the signed coin
// <g, p> - g_i; the others receive its positive part only, so their wealth
// never shrinks while they are out of the prediction.
betting_experts_state betting_experts_step(const betting_experts_state& state, const vec& g);

// Type-erased handles for stacking learners.
learner_ptr make_zero_learner(std::size_t dim);
learner_ptr make_kt_oco_learner(double epsilon = 1.0);
learner_ptr make_coord_kt_learner(std::size_t dim);
learner_ptr make_coord_kt_learner(std::size_t dim, double epsilon_per_coord);
learner_ptr make_dir_mag_learner(std::size_t dim, double epsilon = 1.0,
                                 stepsize_policy direction_policy = adaptive_global_step{2.0});

// Plays the sum of the two predictions and forwards the same gradient to both.
learner_ptr combine(learner_ptr a, learner_ptr b);

}  // namespace oco
