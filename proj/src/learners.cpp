#include <memory>
#include <stdexcept>
#include <utility>

#include "oco/learner.hpp"

namespace oco {

namespace {

// One adapter covers every value-state rule: the step closure maps
// (state, gradient) to the next state and the prediction lives in state.x.
template <typename State, typename Step>
class stepper_learner final : public olo_learner {
 public:
  stepper_learner(State state, Step step) : state_(std::move(state)), step_(std::move(step)) {}

  std::size_t dim() const override { return state_.x.size(); }
  vec predict() const override { return state_.x; }
  void observe(const vec& g) override { state_ = step_(state_, g); }

 private:
  State state_;
  Step step_;
};

template <typename State, typename Step>
learner_ptr wrap(State state, Step step) {
  return std::make_unique<stepper_learner<State, Step>>(std::move(state), std::move(step));
}

}  // namespace

learner_ptr make_osd_learner(osd_state initial) {
  return wrap(std::move(initial), [](const osd_state& s, const vec& g) { return osd_step(s, g); });
}

learner_ptr make_adagrad_learner(adagrad_state initial) {
  return wrap(std::move(initial),
              [](const adagrad_state& s, const vec& g) { return adagrad_step(s, g); });
}

learner_ptr make_eg_learner(eg_state initial) {
  return wrap(std::move(initial), [](const eg_state& s, const vec& g) { return eg_step(s, g); });
}

learner_ptr make_pnorm_learner(pnorm_state initial) {
  return wrap(std::move(initial),
              [](const pnorm_state& s, const vec& g) { return pnorm_step(s, g); });
}

learner_ptr make_ftrl_lin_learner(ftrl_lin_state initial) {
  return wrap(std::move(initial),
              [](const ftrl_lin_state& s, const vec& g) { return ftrl_lin_step(s, g); });
}

learner_ptr make_entropic_ftrl_learner(entropic_ftrl_state initial, double alpha, double linf) {
  return wrap(std::move(initial), [alpha, linf](const entropic_ftrl_state& s, const vec& g) {
    return ftrl_entropic_step(s, g, alpha, linf);
  });
}

learner_ptr make_adahedge_learner(adahedge_state initial) {
  return wrap(std::move(initial),
              [](const adahedge_state& s, const vec& g) { return adahedge_step(s, g); });
}

learner_ptr make_quadratized_learner(quadratized_state initial, double mu) {
  if (!(mu >= 0.0)) throw std::invalid_argument("curvature must be nonnegative");
  return make_quadratized_learner(std::move(initial), [mu](int) { return mu; });
}

learner_ptr make_quadratized_learner(quadratized_state initial,
                                     std::function<double(int)> mu_of_round) {
  if (!mu_of_round) throw std::invalid_argument("curvature schedule is required");
  return wrap(std::move(initial),
              [mu = std::move(mu_of_round)](const quadratized_state& s, const vec& g) {
                return quadratized_step(s, g, mu(s.t + 1), s.x);
              });
}

learner_ptr make_ons_learner(ons_state initial) {
  return wrap(std::move(initial),
              [](const ons_state& s, const vec& g) { return ons_step(s, g, s.x); });
}

}  // namespace oco
