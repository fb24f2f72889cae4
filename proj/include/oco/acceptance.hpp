#pragma once

#include <string>
#include <vector>

namespace oco {

// Outcome of one end-to-end check from the release gate. `observed` and
// `limit` are the headline numbers of the deciding comparison; the direction
// of that comparison is spelled out in `detail` together with any secondary
// conditions the check enforces.
struct criterion_result {
  int id = 0;
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double limit = 0.0;
  std::string detail;
};

// Registered criterion ids, ascending.
std::vector<int> acceptance_ids();

// Runs one criterion. `artifact_dir` is created if missing and receives any
// CSV files the criterion writes. Throws std::invalid_argument on unknown id.
criterion_result run_criterion(int id, const std::string& artifact_dir);

// One status line, no trailing newline:
//   criterion_07 PASS  ftrl_regret_equality_audit  observed=... limit=... | ...
std::string format_criterion_line(const criterion_result& result);

}  // namespace oco
