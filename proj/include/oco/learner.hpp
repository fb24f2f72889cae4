#pragma once

#include <cstddef>
#include <functional>
#include <memory>

#include "oco/first_order.hpp"
#include "oco/ftrl.hpp"
#include "oco/mirror_descent.hpp"
#include "oco/second_order.hpp"
#include "oco/vec.hpp"

namespace oco {

// Uniform surface over heterogeneous online learners so they can be stacked
// (summed, raced, ...). predict() returns the prediction for the current round
// and is stable until observe() consumes the round's gradient.
class olo_learner {
 public:
  virtual ~olo_learner() = default;
  virtual std::size_t dim() const = 0;
  virtual vec predict() const = 0;
  virtual void observe(const vec& g) = 0;
};

using learner_ptr = std::unique_ptr<olo_learner>;

// Adapters lifting the value-state steppers onto the interface. Each factory
// captures whatever per-step arguments its rule needs beyond the gradient;
// rules that take the evaluation point (quadratized, ons) pass their own
// current prediction.
learner_ptr make_osd_learner(osd_state initial);
learner_ptr make_adagrad_learner(adagrad_state initial);
learner_ptr make_eg_learner(eg_state initial);
learner_ptr make_pnorm_learner(pnorm_state initial);
learner_ptr make_ftrl_lin_learner(ftrl_lin_state initial);
learner_ptr make_entropic_ftrl_learner(entropic_ftrl_state initial, double alpha, double linf);
learner_ptr make_adahedge_learner(adahedge_state initial);
learner_ptr make_quadratized_learner(quadratized_state initial, double mu);
// Round-varying curvature (1-based round index), e.g. mu proportional to t
// when losses carry linearly growing weights.
learner_ptr make_quadratized_learner(quadratized_state initial,
                                     std::function<double(int)> mu_of_round);
learner_ptr make_ons_learner(ons_state initial);

}  // namespace oco
