#include "oco/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oco/rng.hpp"
#include "oco/vec.hpp"

using namespace oco;

namespace {

vec random_positive_simplex(rng_engine& rng, std::size_t d) {
  vec x(d);
  double sum = 0.0;
  for (double& v : x) {
    v = uniform(rng, 0.05, 1.0);
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

// Objective whose exact minimizer the tsallis step claims to produce:
// linearized loss plus the Bregman divergence of psi(v) = -2 sum sqrt(v_i).
double tsallis_objective(double eta, const vec& estimate, const vec& x_old, const vec& p) {
  double value = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    value += eta * estimate[i] * p[i];
    value += -2.0 * std::sqrt(p[i]) + 2.0 * std::sqrt(x_old[i]);
    value += (p[i] - x_old[i]) / std::sqrt(x_old[i]);
  }
  return value;
}

struct grid_min {
  double arg;
  double value;
};

// Brute-force minimizer over the 2-simplex slice (p, 1-p) at 1e-4 resolution.
grid_min tsallis_grid_oracle(double eta, const vec& estimate, const vec& x_old) {
  grid_min best{0.0, std::numeric_limits<double>::infinity()};
  for (int k = 1; k < 10000; ++k) {
    const double p = 1e-4 * static_cast<double>(k);
    const double value = tsallis_objective(eta, estimate, x_old, vec{p, 1.0 - p});
    if (value < best.value) best = {p, value};
  }
  return best;
}

struct pseudo_regret_run {
  double pseudo;    // sum over rounds of the pulled arm's gap
  double realized;  // sampled cumulative loss minus horizon * best mean
};

pseudo_regret_run run_stochastic(stoch_bandit_state state, const std::vector<arm_model>& arms,
                                 std::size_t horizon, rng_engine& rng) {
  double best_mean = arms[0].mean;
  for (const auto& arm : arms) best_mean = std::min(best_mean, arm.mean);
  pseudo_regret_run out{0.0, 0.0};
  for (std::size_t t = 0; t < horizon; ++t) {
    const std::size_t arm = stoch_choose(state);
    const double loss = sample_loss(arms[arm], rng);
    out.pseudo += arms[arm].mean - best_mean;
    out.realized += loss - best_mean;
    state = stoch_update(state, arm, loss);
  }
  std::size_t total_pulls = 0;
  for (std::size_t s : state.pulls) total_pulls += s;
  REQUIRE(total_pulls == horizon);
  return out;
}

}  // namespace

TEST_CASE("importance-weighted estimator") {
  SUBCASE("worked values") {
    const vec est = iw_estimate(vec{0.5, 0.25, 0.25}, 1, 0.8);
    CHECK(est[0] == 0.0);
    CHECK(est[1] == 3.2);  // 0.8 / 0.25, exact: division by a power of two
    CHECK(est[2] == 0.0);

    // Deterministic sampling recovers the true loss exactly.
    const vec det = iw_estimate(vec{1.0, 0.0}, 0, 0.37);
    CHECK(det[0] == 0.37);
    CHECK(det[1] == 0.0);
  }

  SUBCASE("zero-probability or invalid arms are rejected") {
    CHECK_THROWS_AS(iw_estimate(vec{0.5, 0.5, 0.0}, 2, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(iw_estimate(vec{0.5, 0.5}, 7, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(iw_estimate(vec{0.5, 0.5}, 0, std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
  }

  SUBCASE("exhaustive average over arms recovers the loss vector") {
    auto rng = make_rng(derive_seed(908, 0));
    for (std::size_t d = 2; d <= 5; ++d) {
      for (int rep = 0; rep < 50; ++rep) {
        const vec x = random_positive_simplex(rng, d);
        vec g(d);
        for (double& v : g) v = uniform(rng, -1.0, 1.0);
        vec avg = zeros(d);
        for (std::size_t a = 0; a < d; ++a) {
          const vec est = iw_estimate(x, a, g[a]);
          axpy(x[a], est, avg);
        }
        for (std::size_t i = 0; i < d; ++i) {
          CHECK(avg[i] == doctest::Approx(g[i]).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("exp3 worked update and validation") {
  const double ln2 = std::log(2.0);
  adv_bandit_state s = make_exp3(2, ln2);
  CHECK(s.x[0] == 0.5);
  CHECK(s.x[1] == 0.5);

  // Estimate (2, 0); weights (.5 * 2^-2, .5) renormalize to (1/5, 4/5).
  const adv_bandit_state hit = exp3_step(s, 0, 1.0);
  CHECK(hit.x[0] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(hit.x[1] == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(hit.t == 1);

  SUBCASE("zero loss leaves the distribution untouched") {
    const adv_bandit_state idle = exp3_step(hit, 1, 0.0);
    CHECK(idle.x[0] == hit.x[0]);
    CHECK(idle.x[1] == hit.x[1]);
    CHECK(idle.t == 2);
  }

  SUBCASE("range and protocol errors") {
    CHECK_THROWS_AS(exp3_step(s, 0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(exp3_step(s, 0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(exp3_step(s, 9, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(tsallis_step(s, 0, 0.5), std::logic_error);
    CHECK_THROWS_AS(make_exp3(1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_exp3(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_exp3(3, 0.1, -1.0), std::invalid_argument);
  }
}

TEST_CASE("exp3 mean pseudo-regret stays under the tuned-rate bound") {
  const std::size_t d = 5;
  const std::size_t horizon = 3000;
  const double eta = std::sqrt(std::log(static_cast<double>(d)) /
                               (static_cast<double>(d) * static_cast<double>(horizon)));
  const std::vector<arm_model> arms = {
      {arm_kind::bernoulli, 0.2, 0.0}, {arm_kind::bernoulli, 0.4, 0.0},
      {arm_kind::bernoulli, 0.5, 0.0}, {arm_kind::bernoulli, 0.6, 0.0},
      {arm_kind::bernoulli, 0.7, 0.0}};

  double total_pseudo = 0.0;
  const int seeds = 50;
  for (int seed = 0; seed < seeds; ++seed) {
    auto rng = make_rng(derive_seed(900, static_cast<std::uint64_t>(seed)));
    adv_bandit_state state = make_exp3(d, eta);
    for (std::size_t t = 0; t < horizon; ++t) {
      const std::size_t arm = sample_arm(sampling_distribution(state), rng);
      const double loss = sample_loss(arms[arm], rng);
      total_pseudo += arms[arm].mean - 0.2;
      state = exp3_step(state, arm, loss);
    }
  }
  const double mean_pseudo = total_pseudo / seeds;
  const double bound = std::sqrt(2.0) * std::sqrt(static_cast<double>(d * horizon) *
                                                  std::log(static_cast<double>(d)));
  CHECK(mean_pseudo <= bound);
  CHECK(mean_pseudo > 0.0);
}

TEST_CASE("exploration mixture behavior") {
  SUBCASE("alpha = 1 always samples uniformly") {
    auto rng = make_rng(derive_seed(901, 1));
    adv_bandit_state state = make_explore_mix(3, 0.2, 1.0, 1.0);
    for (int t = 0; t < 50; ++t) {
      const vec mixed = sampling_distribution(state);
      for (double v : mixed) CHECK(v == 1.0 / 3.0);
      state = explore_mix_step(state, uniform_index(rng, 3), uniform(rng, -1.0, 1.0));
    }
  }

  SUBCASE("alpha = 0 reproduces exp3 exactly") {
    auto rng = make_rng(derive_seed(901, 2));
    adv_bandit_state plain = make_exp3(4, 0.3);
    adv_bandit_state mixed = make_explore_mix(4, 0.3, 0.0);
    for (int t = 0; t < 300; ++t) {
      // Arms drawn from the shared distribution; hammering arbitrary arms
      // regardless of their probability would blow the importance weights up.
      const std::size_t arm = sample_arm(sampling_distribution(mixed), rng);
      const double loss = uniform01(rng);
      plain = exp3_step(plain, arm, loss);
      mixed = explore_mix_step(mixed, arm, loss);
      for (std::size_t i = 0; i < 4; ++i) CHECK(plain.x[i] == mixed.x[i]);
    }
  }

  SUBCASE("estimates are capped at d * loss_bound / alpha") {
    const double alpha = 0.15;
    const double bound = 2.0;
    const std::size_t d = 3;
    auto rng = make_rng(derive_seed(901, 3));
    adv_bandit_state state = make_explore_mix(d, 0.05, alpha, bound);
    const double cap = static_cast<double>(d) * bound / alpha;
    for (int t = 0; t < 10000; ++t) {
      const vec mixed = sampling_distribution(state);
      for (double v : mixed) REQUIRE(v >= alpha / static_cast<double>(d) - 1e-15);
      const std::size_t arm = sample_arm(mixed, rng);
      const double loss = uniform(rng, -bound, bound);
      REQUIRE(std::abs(loss) / mixed[arm] <= cap + 1e-9);
      state = explore_mix_step(state, arm, loss);
    }
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS(make_explore_mix(3, 0.1, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_explore_mix(3, 0.1, 1.1), std::invalid_argument);
    adv_bandit_state state = make_explore_mix(3, 0.1, 0.2, 2.0);
    CHECK_NOTHROW(explore_mix_step(state, 0, -1.5));
    CHECK_THROWS_AS(explore_mix_step(state, 0, -2.5), std::invalid_argument);
    CHECK_THROWS_AS(exp3_step(state, 0, 0.5), std::logic_error);
  }
}

TEST_CASE("tsallis fixed point, normalization, and monotonicity") {
  SUBCASE("zero losses keep the uniform distribution") {
    adv_bandit_state state = make_tsallis(3, 0.1);
    for (int t = 0; t < 50; ++t) {
      state = tsallis_step(state, static_cast<std::size_t>(t % 3), 0.0);
      for (double v : state.x) REQUIRE(v == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    }
  }

  SUBCASE("normalization residual stays within 1e-10 across random rounds") {
    auto rng = make_rng(derive_seed(902, 0));
    adv_bandit_state state = make_tsallis(3, 0.1);
    for (int t = 0; t < 10000; ++t) {
      const std::size_t arm = sample_arm(state.x, rng);
      state = tsallis_step(state, arm, uniform01(rng));
      double sum = 0.0;
      double lowest = std::numeric_limits<double>::infinity();
      for (double v : state.x) {
        sum += v;
        lowest = std::min(lowest, v);
      }
      REQUIRE(std::abs(sum - 1.0) <= 1e-10);
      REQUIRE(lowest > 0.0);
    }
  }

  SUBCASE("raising one arm's loss strictly lowers its next probability") {
    auto rng = make_rng(derive_seed(909, 0));
    for (int rep = 0; rep < 50; ++rep) {
      adv_bandit_state state = make_tsallis(3, 0.5);
      const int warmup = 1 + static_cast<int>(uniform_index(rng, 20));
      for (int t = 0; t < warmup; ++t) {
        state = tsallis_step(state, sample_arm(state.x, rng), uniform01(rng));
      }
      const std::size_t arm = uniform_index(rng, 3);
      const double low = uniform(rng, 0.0, 0.8);
      const double high = low + uniform(rng, 0.1, 1.0);
      CHECK(tsallis_step(state, arm, high).x[arm] < tsallis_step(state, arm, low).x[arm]);
    }
  }

  SUBCASE("validation") {
    adv_bandit_state state = make_tsallis(3, 0.1);
    CHECK_THROWS_AS(tsallis_step(state, 0, -0.2), std::invalid_argument);
    CHECK_THROWS_AS(exp3_step(state, 0, 0.5), std::logic_error);
    CHECK_THROWS_AS(make_tsallis(1, 0.1), std::invalid_argument);
  }
}

TEST_CASE("tsallis step matches direct grid minimization in two dimensions") {
  auto rng = make_rng(derive_seed(903, 0));
  adv_bandit_state state = make_tsallis(2, 0.3);
  for (int round = 0; round < 20; ++round) {
    const std::size_t arm = sample_arm(state.x, rng);
    const double loss = uniform(rng, 0.0, 1.5);
    const vec estimate = iw_estimate(state.x, arm, loss);
    const grid_min oracle = tsallis_grid_oracle(state.eta, estimate, state.x);

    const adv_bandit_state next = tsallis_step(state, arm, loss);
    CHECK(std::abs(next.x[0] - oracle.arg) <= 1.5e-4);
    const double value = tsallis_objective(state.eta, estimate, state.x, next.x);
    CHECK(value <= oracle.value + 1e-7);
    state = next;
  }
}

TEST_CASE("explore-then-commit schedule and commitment") {
  SUBCASE("round-robin phase, then frozen argmin") {
    stoch_bandit_state state = make_etc(3, 2, 100);
    // 1-based round r pulls arm (r mod 3) + 1, i.e. indices 1,2,0,1,2,0.
    const std::size_t expected[6] = {1, 2, 0, 1, 2, 0};
    const double losses[6] = {0.1, 0.5, 0.3, 0.1, 0.5, 0.3};
    for (int t = 0; t < 6; ++t) {
      const std::size_t arm = etc_choose(state);
      REQUIRE(arm == expected[t]);
      state = stoch_update(state, arm, losses[t]);
      std::size_t total = 0;
      for (std::size_t s : state.pulls) total += s;
      REQUIRE(total == state.t);
    }
    CHECK(state.means[0] == doctest::Approx(0.3));
    CHECK(state.means[1] == doctest::Approx(0.1));
    CHECK(state.means[2] == doctest::Approx(0.5));
    CHECK(state.committed == 1);

    // Large losses on the committed arm push its mean past the others, but
    // the commitment never moves.
    for (int t = 0; t < 20; ++t) {
      const std::size_t arm = etc_choose(state);
      CHECK(arm == 1);
      state = stoch_update(state, arm, 1.0);
    }
    CHECK(state.means[1] > state.means[2]);
    CHECK(etc_choose(state) == 1);
  }

  SUBCASE("mean ties commit to the lowest index") {
    stoch_bandit_state state = make_etc(2, 1, 10);
    state = stoch_update(state, etc_choose(state), 0.5);
    state = stoch_update(state, etc_choose(state), 0.5);
    CHECK(state.committed == 0);
    CHECK(etc_choose(state) == 0);
  }

  SUBCASE("construction and horizon errors") {
    CHECK_THROWS_AS(make_etc(3, 0, 100), std::invalid_argument);
    CHECK_THROWS_AS(make_etc(3, 2, 5), std::invalid_argument);
    stoch_bandit_state tiny = make_etc(2, 1, 2);
    tiny = stoch_update(tiny, etc_choose(tiny), 0.1);
    tiny = stoch_update(tiny, etc_choose(tiny), 0.2);
    CHECK_THROWS_AS(stoch_update(tiny, 0, 0.3), std::out_of_range);
    CHECK_THROWS_AS(ucb_index(tiny, 0), std::logic_error);
  }
}

TEST_CASE("ucb index and choice") {
  SUBCASE("unpulled arms come first, lowest index first") {
    stoch_bandit_state state = make_ucb(2, 3.0);
    CHECK(ucb_index(state, 0) == -std::numeric_limits<double>::infinity());
    CHECK(ucb_choose(state) == 0);
    state = stoch_update(state, 0, 0.0);
    CHECK(ucb_choose(state) == 1);
  }

  SUBCASE("worked index value") {
    stoch_bandit_state state = make_ucb(2, 3.0);
    state.pulls = {4, 5};
    state.means = {0.5, 0.0};
    state.t = 9;  // choosing for round 10
    const double expected = 0.5 - std::sqrt(1.5 * std::log(10.0));
    CHECK(ucb_index(state, 0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(ucb_index(state, 0) == doctest::Approx(-1.3584).epsilon(2e-4));
  }

  SUBCASE("exact index ties resolve to the lowest arm") {
    stoch_bandit_state state = make_ucb(2, 2.5);
    state.pulls = {3, 3};
    state.means = {0.2, 0.2};
    state.t = 6;
    CHECK(ucb_choose(state) == 0);
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS(make_ucb(2, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(make_ucb(2, -3.0), std::invalid_argument);
    CHECK_THROWS_AS(make_ucb(1, 3.0), std::invalid_argument);
    stoch_bandit_state state = make_ucb(2, 3.0);
    CHECK_THROWS_AS(etc_choose(state), std::logic_error);
    CHECK_THROWS_AS(stoch_update(state, 5, 0.1), std::invalid_argument);
  }
}

TEST_CASE("pseudo-regret equals realized regret up to sampling noise") {
  const std::vector<arm_model> arms = {{arm_kind::bernoulli, 0.6, 0.0},
                                       {arm_kind::bernoulli, 0.4, 0.0}};
  const std::size_t horizon = 2000;
  const int seeds = 30;
  std::vector<double> diffs;
  for (int seed = 0; seed < seeds; ++seed) {
    auto rng = make_rng(derive_seed(904, static_cast<std::uint64_t>(seed)));
    const pseudo_regret_run run = run_stochastic(make_ucb(2, 3.0), arms, horizon, rng);
    diffs.push_back(run.realized - run.pseudo);
  }
  double mean = 0.0;
  for (double d : diffs) mean += d;
  mean /= seeds;
  double var = 0.0;
  for (double d : diffs) var += (d - mean) * (d - mean);
  var /= (seeds - 1);
  const double noise = 3.0 * std::sqrt(var / seeds);
  CHECK(std::abs(mean) <= std::max(noise, 1.0));
}

TEST_CASE("ucb mean pseudo-regret respects the gap bound") {
  const std::vector<arm_model> arms = {{arm_kind::gaussian, 0.0, 1.0},
                                       {arm_kind::gaussian, 0.2, 1.0},
                                       {arm_kind::gaussian, 0.5, 1.0}};
  const double alpha = 3.0;
  const std::size_t horizon = 3000;
  const int seeds = 40;
  double total = 0.0;
  for (int seed = 0; seed < seeds; ++seed) {
    auto rng = make_rng(derive_seed(905, static_cast<std::uint64_t>(seed)));
    total += run_stochastic(make_ucb(3, alpha), arms, horizon, rng).pseudo;
  }
  const double mean = total / seeds;
  const double log_t = std::log(static_cast<double>(horizon));
  const double bound =
      (alpha / (alpha - 2.0)) * (0.2 + 0.5) + 8.0 * alpha * log_t * (1.0 / 0.2 + 1.0 / 0.5);
  CHECK(mean <= bound);
  CHECK(mean > 0.0);
}

TEST_CASE("etc with the tuned exploration length meets its bound") {
  const double gap = 0.2;
  const std::size_t horizon = 10000;
  const double t_gap = static_cast<double>(horizon) * gap * gap / 4.0;
  const std::size_t m = static_cast<std::size_t>(
      std::max(std::ceil(4.0 / (gap * gap) * std::log(t_gap)), 1.0));
  REQUIRE(m == 461);
  const std::vector<arm_model> arms = {{arm_kind::gaussian, 0.0, 1.0},
                                       {arm_kind::gaussian, gap, 1.0}};
  const int seeds = 60;
  std::vector<double> pseudo;
  for (int seed = 0; seed < seeds; ++seed) {
    auto rng = make_rng(derive_seed(906, static_cast<std::uint64_t>(seed)));
    pseudo.push_back(run_stochastic(make_etc(2, m, horizon), arms, horizon, rng).pseudo);
  }
  double mean = 0.0;
  for (double p : pseudo) mean += p;
  mean /= seeds;
  double var = 0.0;
  for (double p : pseudo) var += (p - mean) * (p - mean);
  var /= (seeds - 1);
  const double bound = gap + (4.0 / gap) * (1.0 + std::max(std::log(t_gap), 0.0));
  CHECK(mean <= bound + 3.0 * std::sqrt(var / seeds));
}

TEST_CASE("sampling distributions stay strictly positive over long fuzz runs") {
  const std::size_t d = 4;
  const std::size_t horizon = 100000;

  SUBCASE("exp3") {
    const double eta = std::sqrt(std::log(static_cast<double>(d)) /
                                 (static_cast<double>(d) * static_cast<double>(horizon)));
    auto rng = make_rng(derive_seed(907, 0));
    adv_bandit_state state = make_exp3(d, eta);
    for (std::size_t t = 0; t < horizon; ++t) {
      const std::size_t arm = sample_arm(sampling_distribution(state), rng);
      state = exp3_step(state, arm, uniform(rng, 0.0, 0.2 + 0.2 * static_cast<double>(arm)));
      double sum = 0.0;
      double lowest = std::numeric_limits<double>::infinity();
      for (double v : state.x) {
        sum += v;
        lowest = std::min(lowest, v);
      }
      REQUIRE(lowest > 0.0);
      REQUIRE(std::abs(sum - 1.0) <= 1e-12);
    }
  }

  SUBCASE("tsallis") {
    const double eta = 1.0 / std::sqrt(static_cast<double>(horizon));
    auto rng = make_rng(derive_seed(907, 1));
    adv_bandit_state state = make_tsallis(d, eta);
    for (std::size_t t = 0; t < horizon; ++t) {
      const std::size_t arm = sample_arm(sampling_distribution(state), rng);
      state = tsallis_step(state, arm, uniform(rng, 0.0, 0.2 + 0.2 * static_cast<double>(arm)));
      double sum = 0.0;
      double lowest = std::numeric_limits<double>::infinity();
      for (double v : state.x) {
        sum += v;
        lowest = std::min(lowest, v);
      }
      REQUIRE(lowest > 0.0);
      REQUIRE(std::abs(sum - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("arm models validate and sample sanely") {
  CHECK_THROWS_AS(validate(arm_model{arm_kind::bernoulli, -0.1, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(arm_model{arm_kind::bernoulli, 1.1, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(arm_model{arm_kind::gaussian, 0.5, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(arm_model{arm_kind::gaussian, 0.5, -1.0}), std::invalid_argument);
  CHECK_NOTHROW(validate(arm_model{arm_kind::bernoulli, 0.0, 0.0}));
  CHECK_NOTHROW(validate(arm_model{arm_kind::bernoulli, 1.0, 0.0}));

  auto rng = make_rng(derive_seed(908, 1));
  const arm_model coin{arm_kind::bernoulli, 0.3, 0.0};
  double sum = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double v = sample_loss(coin, rng);
    REQUIRE((v == 0.0 || v == 1.0));
    sum += v;
  }
  // 3 sigma for 2000 draws of variance 0.21 is about 0.031.
  CHECK(sum / 2000.0 == doctest::Approx(0.3).epsilon(0.15));

  const arm_model bell{arm_kind::gaussian, -0.4, 2.0};
  double gsum = 0.0;
  double gsq = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double v = sample_loss(bell, rng);
    gsum += v;
    gsq += v * v;
  }
  const double gmean = gsum / 2000.0;
  CHECK(std::abs(gmean + 0.4) <= 3.0 * 2.0 / std::sqrt(2000.0));
  const double gvar = gsq / 2000.0 - gmean * gmean;
  CHECK(gvar == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("sample_arm follows the distribution") {
  auto rng = make_rng(derive_seed(908, 2));
  const vec dist{0.1, 0.6, 0.3};
  std::vector<int> counts(3, 0);
  const int draws = 30000;
  for (int i = 0; i < draws; ++i) counts[sample_arm(dist, rng)] += 1;
  for (std::size_t i = 0; i < 3; ++i) {
    const double freq = static_cast<double>(counts[i]) / draws;
    CHECK(std::abs(freq - dist[i]) <= 3.0 * std::sqrt(dist[i] * (1.0 - dist[i]) / draws) + 1e-3);
  }
  CHECK_THROWS_AS(sample_arm(vec{}, rng), std::invalid_argument);
}
