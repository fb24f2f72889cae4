#include "oco/ledger.hpp"

#include <cmath>
#include <stdexcept>

namespace oco {

void regret_ledger::push(round_record rec, loss_spec loss) {
  if (!records.empty() && rec.t <= records.back().t)
    throw std::invalid_argument("round indices must be strictly increasing");
  if (!all_finite(rec.x) || !all_finite(rec.g) || !std::isfinite(rec.loss_value))
    throw std::invalid_argument("non-finite round record");
  records.push_back(std::move(rec));
  losses.push_back(std::move(loss));
}

bool regret_ledger::consistent() const {
  if (records.size() != losses.size()) return false;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const double v = evaluate(losses[i], records[i].x);
    const double tol = 1e-9 * std::max({1.0, std::fabs(v), std::fabs(records[i].loss_value)});
    if (std::fabs(v - records[i].loss_value) > tol) return false;
  }
  return true;
}

double regret(const regret_ledger& led, const vec& u) {
  double mine = 0.0, theirs = 0.0;
  for (std::size_t i = 0; i < led.records.size(); ++i) {
    mine += evaluate(led.losses[i], led.records[i].x);
    theirs += evaluate(led.losses[i], u);
  }
  return mine - theirs;
}

double best_squared_loss_competitor(const std::vector<double>& ys) {
  if (ys.empty()) throw std::invalid_argument("empty target sequence");
  double s = 0.0;
  for (double y : ys) s += y;
  return s / static_cast<double>(ys.size());
}

}  // namespace oco
