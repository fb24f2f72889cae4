#include "oco/environments.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <variant>
#include <vector>

#include "doctest.h"
#include "oco/first_order.hpp"
#include "oco/ftrl.hpp"
#include "oco/learner.hpp"
#include "oco/loss.hpp"
#include "oco/parameter_free.hpp"
#include "oco/rng.hpp"
#include "oco/vec.hpp"

using namespace oco;

namespace {

const vec& linear_of(const loss_spec& loss) {
  REQUIRE(std::holds_alternative<linear_loss>(loss.form));
  return std::get<linear_loss>(loss.form).g;
}

// Follow-the-leader on an interval, realized as the quadratic-regularized
// leader with negligible regularization: the prediction clamps theta / lambda,
// which is the sign rule once |theta| dwarfs lambda, and 0 beforehand.
ftrl_lin_state make_interval_ftl() {
  return make_ftrl_lin(1, feasible_set{box{vec{-1.0}, vec{1.0}}}, ftrl_lambda{1e-12, false});
}

double guessing_best_fixed(const std::vector<double>& y) {
  double sum = 0.0;
  double sq = 0.0;
  for (double v : y) {
    sum += v;
    sq += v * v;
  }
  const double n = static_cast<double>(y.size());
  return sq - sum * sum / n;  // min over u of sum (u - y_t)^2
}

}  // namespace

TEST_CASE("environment validation") {
  CHECK_THROWS_AS(make_environment(guessing_game{{}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_environment(guessing_game{{0.5, 1.2}}, 1), std::invalid_argument);
  CHECK_NOTHROW(make_environment(guessing_game{{0.0, 1.0, 0.5}}, 1));

  CHECK_THROWS_AS(make_environment(rademacher_olo{0.0, 2.0, vec{1.0}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_environment(rademacher_olo{1.0, -2.0, vec{1.0}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_environment(rademacher_olo{1.0, 2.0, vec{0.0, 0.0}}, 1),
                  std::invalid_argument);
  const environment rad = make_environment(rademacher_olo{1.0, 2.0, vec{3.0, 4.0}}, 1);
  const auto& payload = std::get<rademacher_olo>(rad.kind);
  CHECK(payload.direction[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(payload.direction[1] == doctest::Approx(0.8).epsilon(1e-15));

  CHECK_THROWS_AS(make_environment(iid_linear{vec{}, 1.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_environment(iid_linear{vec{1.0}, -0.5}, 1), std::invalid_argument);

  CHECK_THROWS_AS(make_environment(stochastic_arms{{{arm_kind::bernoulli, 0.5, 0.0}}}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      make_environment(stochastic_arms{{{arm_kind::bernoulli, 1.5, 0.0},
                                        {arm_kind::bernoulli, 0.5, 0.0}}},
                       1),
      std::invalid_argument);

  CHECK_THROWS_AS(make_environment(fixed_convex{{linear_loss{vec{1.0}}, 0.0}}, 1),
                  std::invalid_argument);
}

TEST_CASE("worked loss values") {
  SUBCASE("alternating failure sequence") {
    const environment env = make_environment(ftl_failure{}, 7);
    CHECK(env_dim(env) == 1);
    CHECK(linear_of(next_loss(env, 1))[0] == -0.5);
    CHECK(linear_of(next_loss(env, 2))[0] == 1.0);
    CHECK(linear_of(next_loss(env, 3))[0] == -1.0);
    CHECK(linear_of(next_loss(env, 4))[0] == 1.0);
    CHECK(linear_of(next_loss(env, 999))[0] == -1.0);
    CHECK_THROWS_AS(next_loss(env, 0), std::invalid_argument);
  }

  SUBCASE("guessing game emits squared distances to the targets") {
    const environment env = make_environment(guessing_game{{0.3}}, 7);
    const loss_spec loss = next_loss(env, 1);
    REQUIRE(std::holds_alternative<squared_distance_loss>(loss.form));
    CHECK(std::get<squared_distance_loss>(loss.form).y[0] == 0.3);
    CHECK(evaluate(loss, vec{0.5}) == doctest::Approx(0.04).epsilon(1e-12));
    CHECK_THROWS_AS(next_loss(env, 2), std::out_of_range);
  }

  SUBCASE("fixed convex repeats its template") {
    const loss_spec quad{squared_distance_loss{vec{0.0, 0.0}}, 2.5};
    const environment env = make_environment(fixed_convex{quad}, 7);
    CHECK(env_dim(env) == 2);
    for (std::size_t t : {std::size_t{1}, std::size_t{5}, std::size_t{1000}}) {
      const loss_spec loss = next_loss(env, t);
      CHECK(evaluate(loss, vec{1.0, 1.0}) == doctest::Approx(5.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("streams are bit-exact per seed and order-free") {
  const environment envs[] = {
      make_environment(rademacher_olo{1.5, 2.0, vec{1.0, 1.0, 1.0}}, 42),
      make_environment(iid_linear{vec{0.2, -0.4}, 0.7}, 42),
      make_environment(stochastic_arms{{{arm_kind::bernoulli, 0.3, 0.0},
                                        {arm_kind::gaussian, 0.5, 1.0}}},
                       42),
  };
  for (const environment& env : envs) {
    const environment twin = env;  // same kind, same seed
    std::vector<vec> in_order;
    for (std::size_t t = 1; t <= 50; ++t) in_order.push_back(linear_of(next_loss(env, t)));
    for (std::size_t t = 50; t >= 1; --t) {
      const vec replay = linear_of(next_loss(twin, t));
      const vec& expected = in_order[t - 1];
      REQUIRE(replay.size() == expected.size());
      for (std::size_t i = 0; i < replay.size(); ++i) REQUIRE(replay[i] == expected[i]);
    }
  }

  // A different seed must not reproduce the sign stream.
  const environment a = make_environment(rademacher_olo{1.0, 2.0, vec{1.0}}, 1);
  const environment b = make_environment(rademacher_olo{1.0, 2.0, vec{1.0}}, 2);
  bool differs = false;
  for (std::size_t t = 1; t <= 64 && !differs; ++t) {
    differs = linear_of(next_loss(a, t))[0] != linear_of(next_loss(b, t))[0];
  }
  CHECK(differs);
}

TEST_CASE("rademacher rounds have fixed magnitude and near-zero drift") {
  const environment env = make_environment(rademacher_olo{1.5, 2.0, vec{2.0, 0.0, 0.0}}, 11);
  double sign_sum = 0.0;
  const std::size_t horizon = 2000;
  for (std::size_t t = 1; t <= horizon; ++t) {
    const vec g = linear_of(next_loss(env, t));
    REQUIRE(norm2(g) == doctest::Approx(1.5).epsilon(1e-12));
    sign_sum += g[0] > 0.0 ? 1.0 : -1.0;
  }
  CHECK(std::abs(sign_sum) <= 3.0 * std::sqrt(static_cast<double>(horizon)) + 1.0);
}

TEST_CASE("leader ping-pongs on the failure sequence while descent stays calm") {
  const environment env = make_environment(ftl_failure{}, 3);
  const std::size_t horizon = 1000;

  SUBCASE("follow-the-leader loses a unit per round") {
    ftrl_lin_state leader = make_interval_ftl();
    CHECK(leader.x[0] == 0.0);  // fixed first prediction
    double cum = 0.0;
    for (std::size_t t = 1; t <= horizon; ++t) {
      const vec g = linear_of(next_loss(env, t));
      cum += g[0] * leader.x[0];
      leader = ftrl_lin_step(leader, g);
    }
    // Competitor u = 0 pays nothing, so the regret is the cumulative loss.
    CHECK(cum >= static_cast<double>(horizon) - 2.0);
  }

  SUBCASE("subgradient descent with decaying steps keeps sqrt-T regret") {
    osd_state osd = make_osd(vec{0.0}, feasible_set{box{vec{-1.0}, vec{1.0}}},
                             stepsize_policy{decaying_step{2.0, 1.0}});
    double cum = 0.0;
    for (std::size_t t = 1; t <= horizon; ++t) {
      const vec g = linear_of(next_loss(env, t));
      cum += g[0] * osd.x[0];
      osd = osd_step(osd, g);
    }
    CHECK(cum <= 3.0 * std::sqrt(static_cast<double>(horizon)));
  }
}

TEST_CASE("leader on guessing games stays within the logarithmic bound") {
  const std::size_t horizon = 500;
  for (int seq = 0; seq < 100; ++seq) {
    auto rng = make_rng(derive_seed(1000, static_cast<std::uint64_t>(seq)));
    std::vector<double> targets(horizon);
    for (double& y : targets) y = uniform01(rng);
    const environment env = make_environment(guessing_game{targets}, 0);

    quadratized_state leader = make_quadratized(1);
    double cum = 0.0;
    double mean = 0.0;
    for (std::size_t t = 1; t <= horizon; ++t) {
      const loss_spec loss = next_loss(env, t);
      cum += evaluate(loss, leader.x);
      leader = quadratized_step(leader, subgradient(loss, leader.x), 2.0, leader.x);
      mean += (targets[t - 1] - mean) / static_cast<double>(t);
      REQUIRE(leader.x[0] == doctest::Approx(mean).epsilon(1e-12));
    }
    const double regret = cum - guessing_best_fixed(targets);
    REQUIRE(regret <= 4.0 + 4.0 * std::log(static_cast<double>(horizon)));
    REQUIRE(regret >= -1e-9);
  }
}

TEST_CASE("random sign sequences force sqrt-T regret on every tested learner") {
  const double lipschitz = 1.5;
  const double diameter = 2.0;
  const std::size_t horizon = 4096;
  const int seeds = 200;
  const vec direction{1.0, 1.0, 1.0};

  enum { osd_idx, ftrl_idx, coin_idx, learner_count };
  double mean_regret[learner_count] = {0.0, 0.0, 0.0};

  for (int seed = 0; seed < seeds; ++seed) {
    const environment env = make_environment(
        rademacher_olo{lipschitz, diameter, direction}, derive_seed(1001, seed));
    const vec z = std::get<rademacher_olo>(env.kind).direction;

    learner_ptr learners[learner_count];
    learners[osd_idx] = make_osd_learner(make_osd(
        zeros(3), feasible_set{l2_ball{diameter / 2.0}},
        stepsize_policy{decaying_step{diameter, lipschitz}}));
    learners[ftrl_idx] = make_ftrl_lin_learner(
        make_ftrl_lin(3, feasible_set{l2_ball{diameter / 2.0}}, ftrl_lambda{1.0, true}));
    learners[coin_idx] = make_coord_kt_learner(3);

    double cum[learner_count] = {0.0, 0.0, 0.0};
    vec g_sum = zeros(3);
    for (std::size_t t = 1; t <= horizon; ++t) {
      const vec g = linear_of(next_loss(env, t));
      for (int l = 0; l < learner_count; ++l) {
        cum[l] += dot(g, learners[l]->predict());
        learners[l]->observe(g);
      }
      axpy(1.0, g, g_sum);
    }
    // Best of the two extreme points +-(D/2) z.
    const double best = -0.5 * diameter * std::abs(dot(g_sum, z));
    for (int l = 0; l < learner_count; ++l) mean_regret[l] += (cum[l] - best) / seeds;
  }

  const double floor_value =
      0.2 * lipschitz * diameter * std::sqrt(static_cast<double>(horizon));
  for (int l = 0; l < learner_count; ++l) {
    CHECK(mean_regret[l] >= floor_value);
  }
}

TEST_CASE("weight schedules") {
  const std::vector<double> uni = o2b_weights(4, o2b_weighting::uniform);
  const std::vector<double> inv = o2b_weights(4, o2b_weighting::inv_sqrt_t);
  const std::vector<double> lin = o2b_weights(4, o2b_weighting::linear_t);
  for (double w : uni) CHECK(w == 1.0);
  CHECK(inv[0] == 1.0);
  CHECK(inv[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(inv[3] == 0.5);
  CHECK(lin[0] == 1.0);
  CHECK(lin[3] == 4.0);
}

TEST_CASE("online-to-batch conversion") {
  SUBCASE("one round returns the first prediction unchanged") {
    learner_ptr learner = make_osd_learner(
        make_osd(vec{0.7, -0.2}, feasible_set{all_of_space{}}, stepsize_policy{constant_step{0.1}}));
    const auto result = online_to_batch(
        *learner, [](std::size_t) { return loss_spec{linear_loss{vec{1.0, 1.0}}, 1.0}; }, 1,
        o2b_weights(1, o2b_weighting::uniform),
        [](const vec& x) { return dot(x, x); });
    CHECK(result.average[0] == 0.7);
    CHECK(result.average[1] == -0.2);
    CHECK(result.objective == doctest::Approx(0.53).epsilon(1e-12));
  }

  SUBCASE("descent averages near the fixed quadratic's minimizer") {
    const environment env =
        make_environment(fixed_convex{{squared_distance_loss{vec{0.0}}, 1.0}}, 5);
    const loss_sampler sampler = [&env](std::size_t t) { return next_loss(env, t); };
    const objective_fn objective = [](const vec& x) { return dot(x, x); };
    for (o2b_weighting kind : {o2b_weighting::uniform, o2b_weighting::inv_sqrt_t}) {
      learner_ptr learner = make_osd_learner(make_osd(
          vec{1.0}, feasible_set{l2_ball{1.0}}, stepsize_policy{decaying_step{2.0, 2.0}}));
      const auto result =
          online_to_batch(*learner, sampler, 1000, o2b_weights(1000, kind), objective);
      CHECK(std::abs(result.average[0]) <= 0.1);
      CHECK(result.objective == doctest::Approx(result.average[0] * result.average[0]));
    }
  }

  SUBCASE("linear weights beat uniform on a strongly convex objective") {
    // On quadratics the two weightings differ by a constant factor in the
    // averaged estimator's variance (about 1.7x), so a single paired run has
    // a weak signal; each seed therefore averages the paired objective gap
    // over independent streams to estimate the expected objective.
    const vec center{0.4, -0.7};
    const std::size_t horizon = 500;
    const int seeds = 20;
    const int streams = 25;
    const objective_fn excess = [&center](const vec& x) {
      vec d = sub(x, center);
      return dot(d, d);
    };

    double grand_gap = 0.0;
    int positive_seeds = 0;
    for (int seed = 0; seed < seeds; ++seed) {
      double seed_gap = 0.0;
      for (int rep = 0; rep < streams; ++rep) {
        const std::uint64_t stream =
            derive_seed(derive_seed(1002, static_cast<std::uint64_t>(seed)),
                        static_cast<std::uint64_t>(rep));
        const loss_sampler sampler = [&center, stream](std::size_t t) {
          auto rng = make_rng(derive_seed(stream, t));
          vec target = center;
          for (double& v : target) v += uniform(rng, -0.5, 0.5);
          return loss_spec{squared_distance_loss{std::move(target)}, 1.0};
        };

        learner_ptr uniform_learner = make_quadratized_learner(make_quadratized(2), 2.0);
        const auto uniform_run =
            online_to_batch(*uniform_learner, sampler, horizon,
                            o2b_weights(horizon, o2b_weighting::uniform), excess);

        // t-weighted losses are 2t-strongly convex, so the curvature grows
        // with the round.
        learner_ptr linear_learner = make_quadratized_learner(
            make_quadratized(2), [](int round) { return 2.0 * round; });
        const auto linear_run =
            online_to_batch(*linear_learner, sampler, horizon,
                            o2b_weights(horizon, o2b_weighting::linear_t), excess);

        seed_gap += (uniform_run.objective - linear_run.objective) / streams;
      }
      grand_gap += seed_gap / seeds;
      if (seed_gap > 0.0) positive_seeds += 1;
    }
    CHECK(grand_gap > 0.0);
    CHECK(positive_seeds >= 15);
  }

  SUBCASE("validation") {
    learner_ptr learner = make_osd_learner(
        make_osd(vec{0.0}, feasible_set{all_of_space{}}, stepsize_policy{constant_step{0.1}}));
    const loss_sampler sampler = [](std::size_t) {
      return loss_spec{linear_loss{vec{1.0}}, 1.0};
    };
    const objective_fn objective = [](const vec& x) { return x[0]; };
    CHECK_THROWS_AS(online_to_batch(*learner, sampler, 3, {1.0, 1.0}, objective),
                    std::invalid_argument);
    CHECK_THROWS_AS(online_to_batch(*learner, sampler, 2, {1.0, 0.0}, objective),
                    std::invalid_argument);
    CHECK_THROWS_AS(online_to_batch(*learner, sampler, 0, {}, objective), std::invalid_argument);
    CHECK_THROWS_AS(online_to_batch(*learner, loss_sampler{}, 1, {1.0}, objective),
                    std::invalid_argument);
  }
}
