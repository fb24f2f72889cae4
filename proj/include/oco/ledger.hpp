#pragma once

#include <optional>
#include <vector>

#include "oco/loss.hpp"
#include "oco/vec.hpp"

namespace oco {

struct round_record {
  int t = 0;  // 1-based round index
  vec x;
  double loss_value = 0.0;
  vec g;  // gradient the learner actually consumed (may be an estimate)
  std::optional<double> aux;  // per-algorithm scalar (wealth, temperature, ...)
};

// Full trajectory of one game: what was played and the true losses, kept so
// any fixed competitor can be evaluated after the fact.
struct regret_ledger {
  std::vector<round_record> records;
  std::vector<loss_spec> losses;

  void push(round_record rec, loss_spec loss);

  // recomputes every stored loss_value with evaluate(); true when all match
  // within 1e-9 relative
  bool consistent() const;
};

// sum of played losses minus sum of losses of the fixed point u;
// empty ledger gives 0.
double regret(const regret_ledger& led, const vec& u);

// argmin over fixed predictions of the cumulative squared loss: the mean.
double best_squared_loss_competitor(const std::vector<double>& ys);

}  // namespace oco
