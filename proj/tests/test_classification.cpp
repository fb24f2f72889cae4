#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oco/classification.hpp"
#include "oco/rng.hpp"
#include "oco/vec.hpp"

using namespace oco;

namespace {

struct example {
  vec z;
  int y;
};

// one labeled point with margin at least `gamma` against the unit separator
example separable_example(rng_engine& rng, const vec& separator, double gamma) {
  while (true) {
    vec z{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    if (norm2(z) > 1.0) continue;
    double m = dot(z, separator);
    if (std::fabs(m) < gamma) continue;
    return example{z, m > 0.0 ? 1 : -1};
  }
}

vec random_unit(rng_engine& rng) {
  double angle = uniform(rng, 0.0, 8.0 * std::atan(1.0));
  return vec{std::cos(angle), std::sin(angle)};
}

}  // namespace

TEST_CASE("perceptron worked updates and validation") {
  perceptron_state s = make_perceptron(2);

  auto correct = perceptron_step(s, vec{1.0, 0.0}, 1);
  REQUIRE(correct.prediction == 1);  // zero margin counts as +1
  REQUIRE(correct.state.mistakes == 0);
  REQUIRE(correct.state.x == zeros(2));

  auto wrong = perceptron_step(s, vec{1.0, 0.0}, -1);
  REQUIRE(wrong.prediction == 1);
  REQUIRE(wrong.state.mistakes == 1);
  REQUIRE(wrong.state.x == vec{-1.0, 0.0});

  REQUIRE_THROWS_AS(perceptron_step(s, vec{1.0}, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(perceptron_step(s, vec{1.0, 0.0}, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(perceptron_step(s, vec{std::nan(""), 0.0}, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(make_perceptron(0), std::invalid_argument);
}

TEST_CASE("perceptron stops erring on a fixed separable cycle") {
  // margin 0.6 against (1, 0) and squared radius 0.45, so at most one mistake
  std::vector<example> cycle = {{vec{-0.6, 0.3}, -1},
                                {vec{0.6, 0.3}, 1},
                                {vec{0.6, -0.3}, 1},
                                {vec{-0.6, -0.3}, -1}};
  double gamma = 0.6;
  double radius_sq = 0.45;

  perceptron_state s = make_perceptron(2);
  std::size_t wrong_after_first = 0;
  for (int t = 0; t < 200; ++t) {
    const example& e = cycle[t % cycle.size()];
    auto r = perceptron_step(s, e.z, e.y);
    if (t >= 1 && r.prediction != e.y) ++wrong_after_first;
    s = r.state;
  }
  REQUIRE(static_cast<double>(s.mistakes) * gamma * gamma <= radius_sq * (1.0 + 1e-12));
  REQUIRE(s.mistakes == 1);
  REQUIRE(wrong_after_first == 0);
}

TEST_CASE("perceptron mistake count respects the margin bound on random data") {
  for (int seed = 0; seed < 10; ++seed) {
    rng_engine rng = make_rng(derive_seed(800, seed));
    vec separator = random_unit(rng);
    double gamma = 0.25;

    perceptron_state s = make_perceptron(2);
    double radius_sq = 0.0;
    for (int t = 0; t < 500; ++t) {
      example e = separable_example(rng, separator, gamma);
      radius_sq = std::max(radius_sq, norm2_sq(e.z));
      s = perceptron_step(s, e.z, e.y).state;
    }
    REQUIRE(static_cast<double>(s.mistakes) <= radius_sq / (gamma * gamma) + 1e-9);
  }
}

TEST_CASE("scaling perceptron updates never changes its predictions") {
  // dyadic and small-integer rates keep the scaled weights exact, so the
  // margins carry the same sign bit for bit
  for (double rate : {0.5, 3.0}) {
    rng_engine rng = make_rng(derive_seed(801, rate == 0.5 ? 0 : 1));
    perceptron_state canonical = make_perceptron(2);
    vec scaled_w = zeros(2);
    std::size_t scaled_mistakes = 0;

    for (int t = 0; t < 300; ++t) {
      vec z{static_cast<double>(uniform_index(rng, 7)) - 3.0,
            static_cast<double>(uniform_index(rng, 7)) - 3.0};
      int y = rademacher(rng) > 0 ? 1 : -1;

      auto r = perceptron_step(canonical, z, y);
      int scaled_pred = dot(z, scaled_w) >= 0.0 ? 1 : -1;
      REQUIRE(scaled_pred == r.prediction);
      if (scaled_pred != y) {
        axpy(rate * y, z, scaled_w);
        ++scaled_mistakes;
      }
      canonical = r.state;
    }
    REQUIRE(scaled_mistakes == canonical.mistakes);
  }
}

TEST_CASE("perceptron mistakes stay below the hinge-competitor bound") {
  const int horizon = 150;
  for (int seed = 0; seed < 4; ++seed) {
    rng_engine rng = make_rng(derive_seed(802, seed));
    vec separator = random_unit(rng);

    std::vector<vec> zy;  // label-weighted examples
    perceptron_state s = make_perceptron(2);
    double radius = 0.0;
    for (int t = 0; t < horizon; ++t) {
      example e = separable_example(rng, separator, 0.1);
      if (uniform01(rng) < 0.15) e.y = -e.y;  // hinge-positive noise
      radius = std::max(radius, norm2(e.z));
      zy.push_back(scaled(e.z, static_cast<double>(e.y)));
      s = perceptron_step(s, e.z, e.y).state;
    }

    // grid over the competitor ball; every grid point upper-bounds the minimum
    double best = 1e300;
    for (double u0 = -2.5; u0 <= 2.5 + 1e-12; u0 += 0.01) {
      for (double u1 = -2.5; u1 <= 2.5 + 1e-12; u1 += 0.01) {
        if (u0 * u0 + u1 * u1 > 2.5 * 2.5) continue;
        double hinge = 0.0;
        for (const vec& v : zy) hinge += std::max(0.0, 1.0 - (v[0] * u0 + v[1] * u1));
        double norm_sq = u0 * u0 + u1 * u1;
        double rhs = hinge + radius * radius * norm_sq / 2.0 +
                     radius * std::sqrt(norm_sq) *
                         std::sqrt(radius * radius * norm_sq / 4.0 + hinge);
        best = std::min(best, rhs);
      }
    }
    REQUIRE(static_cast<double>(s.mistakes) <= best + 1e-9);
  }
}

TEST_CASE("randomized classifier worked values") {
  rng_engine rng = make_rng(derive_seed(803, 0));

  rand_classifier_state fresh = make_rand_classifier(2, 1.0);
  REQUIRE(rand_classifier_point(fresh) == zeros(2));
  REQUIRE(positive_label_probability(fresh, vec{1.0, 0.0}) == 0.5);

  // surrogate steps move theta toward the given label
  auto up = rand_classifier_step(fresh, vec{1.0, 0.0}, 1, rng);
  REQUIRE(up.state.theta == vec{0.5, 0.0});
  REQUIRE(up.state.t == 1);
  auto down = rand_classifier_step(fresh, vec{1.0, 0.0}, -1, rng);
  REQUIRE(down.state.theta == vec{-0.5, 0.0});

  // saturated margin: certain +1 prediction, and the zero subgradient at the
  // kink leaves theta alone
  rand_classifier_state sure{vec{5.0, 0.0}, 1.0, 0};
  REQUIRE(rand_classifier_point(sure) == vec{1.0, 0.0});
  REQUIRE(positive_label_probability(sure, vec{1.0, 0.0}) == 1.0);
  for (int i = 0; i < 20; ++i) {
    auto r = rand_classifier_step(sure, vec{1.0, 0.0}, 1, rng);
    REQUIRE(r.prediction == 1);
    REQUIRE(r.state.theta == vec{5.0, 0.0});
  }

  REQUIRE_THROWS_AS(positive_label_probability(fresh, vec{2.0, 0.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(rand_classifier_step(fresh, vec{2.0, 0.0}, 1, rng), std::invalid_argument);
  REQUIRE_THROWS_AS(rand_classifier_step(fresh, vec{0.5, 0.0}, 2, rng), std::invalid_argument);
  REQUIRE_THROWS_AS(make_rand_classifier(2, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(make_rand_classifier(0, 1.0), std::invalid_argument);
}

TEST_CASE("expected mistakes trail the in-ball surrogate by at most sqrt(2T)") {
  const int horizon = 2000;
  double total_expected = 0.0;
  double total_sampled = 0.0;
  double total_variance = 0.0;

  for (int seed = 0; seed < 50; ++seed) {
    rng_engine rng = make_rng(derive_seed(804, seed));
    vec separator = random_unit(rng);

    rand_classifier_state s = make_rand_classifier(2, 1.0);
    double expected = 0.0;
    vec zy_sum = zeros(2);
    for (int t = 0; t < horizon; ++t) {
      example e = separable_example(rng, separator, 0.2);
      double p = positive_label_probability(s, e.z);
      REQUIRE(p >= 0.0);
      REQUIRE(p <= 1.0);
      REQUIRE(norm2(rand_classifier_point(s)) <= 1.0 + 1e-12);

      double p_mistake = e.y == 1 ? 1.0 - p : p;
      expected += p_mistake;
      total_variance += p_mistake * (1.0 - p_mistake);
      axpy(static_cast<double>(e.y), e.z, zy_sum);

      auto r = rand_classifier_step(s, e.z, e.y, rng);
      if (r.prediction != e.y) total_sampled += 1.0;
      s = r.state;
    }

    // the surrogate is linear in u, so its in-ball minimum is at the boundary
    // along sum(y z): value T/2 - ||sum(y z)|| / 2
    double best_surrogate = horizon / 2.0 - norm2(zy_sum) / 2.0;
    REQUIRE(expected - best_surrogate <= std::sqrt(2.0 * horizon) + 1e-9);
    total_expected += expected;
  }

  // sampled mistakes agree with the accumulated expectation up to noise
  REQUIRE(std::fabs(total_sampled - total_expected) <=
          5.0 * std::sqrt(total_variance) + 5.0);
}
