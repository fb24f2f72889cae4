#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oco/environments.hpp"
#include "oco/vec.hpp"

namespace oco {

// Flat key=value configuration text. One `key = value` pair per line, '#'
// starts a comment, blank lines are skipped. Keys are dotted paths grouping
// the learner / environment / run / competitor / bound sections; the full
// schema is documented in the README. Duplicate keys are an error.
using config_map = std::map<std::string, std::string>;

config_map parse_config_text(const std::string& text);
// Reads the file and parses it. Throws std::runtime_error when the file
// cannot be read, std::invalid_argument on grammar errors.
config_map load_config_file(const std::string& path);

struct competitor_spec {
  enum class kind { fixed, grid, best_arm };
  kind k = kind::fixed;
  vec point;          // fixed: the comparator itself
  vec lo, hi;         // grid: box corners, one entry per dimension
  std::size_t steps = 0;  // grid: points per axis (endpoints included)
};

// Which theoretical curve to overlay in the CSV and check the run against.
// `params` hold the curve's constants as raw strings (parsed per kind);
// `lower` flips the comparison: the run passes when regret >= curve instead
// of <=.
struct bound_spec {
  std::string kind = "none";
  bool lower = false;
  std::map<std::string, std::string> params;
};

struct experiment_config {
  std::string learner_name;
  std::map<std::string, std::string> learner_params;

  // Template environment; each seed gets a copy with its own derived seed.
  // When random_targets is set the guessing-game target list is redrawn
  // uniformly in [0,1] per seed instead of using the template's list.
  environment_kind env_template;
  bool random_targets = false;

  std::size_t horizon = 0;
  std::vector<std::uint64_t> seeds;
  std::size_t threads = 1;
  std::string out;  // CSV path prefix; empty writes no files

  competitor_spec competitor;
  bound_spec bound;
  // How per-seed final regrets are reduced before the bound comparison:
  // "max" requires every seed to meet its own curve, "mean" compares the
  // averages.
  std::string bound_aggregate = "max";
};

// Builds and fully validates a config from parsed text: unknown sections or
// parameter names, missing required fields, and malformed values all throw
// std::invalid_argument with the offending key in the message.
experiment_config make_experiment_config(const config_map& raw);

struct round_record {
  std::size_t round = 0;  // 1-based
  double loss = 0.0;
  double cum_loss = 0.0;
  double competitor_cum_loss = 0.0;
  double regret = 0.0;
  double bound = 0.0;  // NaN when no curve was requested
};

// CSV with header `round,loss,cum_loss,competitor_cum_loss,regret,bound`,
// every row newline-terminated, reals printed with 12 significant digits.
std::string format_csv(const std::vector<round_record>& rounds);
// format_csv written to `path`; throws std::runtime_error when unwritable.
void emit_csv(const std::vector<round_record>& rounds, const std::string& path);

// Everything a data-dependent curve may need about a finished (or simulated)
// run. Static curves ignore `grads`.
struct run_metadata {
  std::size_t horizon = 0;
  std::size_t dim = 0;
  std::vector<vec> grads;  // observed gradient (or loss) vectors per round
};

// The curve value at each prefix length 1..horizon. Throws
// std::invalid_argument on an unknown kind or missing parameter/metadata.
std::vector<double> bound_curve(const bound_spec& spec, const run_metadata& meta);

struct seed_run {
  std::uint64_t seed = 0;
  std::vector<round_record> rounds;
  double final_regret = 0.0;
  std::string csv_text;
  std::string csv_path;  // empty when no file was written
};

struct experiment_summary {
  std::vector<seed_run> runs;  // in seed-list order
  double mean_final_regret = 0.0;
  double max_final_regret = 0.0;
  bool bound_checked = false;
  bool bound_pass = true;
};

// Plays the full game for every seed (fanned out across at most
// cfg.threads workers, results joined in seed order so output is identical
// for any thread count), writes one CSV per seed when cfg.out is set, and
// evaluates the bound comparison.
experiment_summary run_experiment(const experiment_config& cfg);

// Per-seed stream split: substream `role` of master seed `s` for the
// environment (role 1), the sampling policy (role 2), and generated targets
// (role 3). Exposed so tests and docs can state the exact derivation.
std::uint64_t seed_for_role(std::uint64_t master_seed, std::uint64_t role);

}  // namespace oco
