#include "oco/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "oco/bandit.hpp"
#include "oco/learner.hpp"
#include "oco/loss.hpp"
#include "oco/parameter_free.hpp"
#include "oco/rng.hpp"

namespace oco {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  if (s.empty()) throw std::invalid_argument(key + ": empty number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw std::invalid_argument(key + ": not a number: '" + raw + "'");
  return v;
}

std::vector<double> parse_number_list(const std::string& raw, const std::string& key) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(raw);
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, key));
  if (out.empty()) throw std::invalid_argument(key + ": empty list");
  return out;
}

std::uint64_t parse_count(const std::string& raw, const std::string& key) {
  const double v = parse_number(raw, key);
  if (v < 0.0 || v != std::floor(v) || v > 9e15)
    throw std::invalid_argument(key + ": not a nonnegative integer: '" + raw + "'");
  return static_cast<std::uint64_t>(v);
}

bool parse_flag(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument(key + ": expected true/false: '" + raw + "'");
}

// Typed view over one section's parameters that records which keys were read,
// so anything left over can be rejected as unknown for the chosen name.
class param_reader {
 public:
  param_reader(std::map<std::string, std::string> kv, std::string section)
      : kv_(std::move(kv)), section_(std::move(section)) {}

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  std::string word(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw std::invalid_argument(qual(key) + ": required");
    used_.insert(key);
    return trim(it->second);
  }
  std::string word_or(const std::string& key, const std::string& fallback) {
    return has(key) ? word(key) : fallback;
  }
  double number(const std::string& key) { return parse_number(word(key), qual(key)); }
  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }
  std::vector<double> list(const std::string& key) {
    return parse_number_list(word(key), qual(key));
  }
  std::uint64_t count(const std::string& key) { return parse_count(word(key), qual(key)); }
  std::uint64_t count_or(const std::string& key, std::uint64_t fallback) {
    return has(key) ? count(key) : fallback;
  }
  bool flag_or(const std::string& key, bool fallback) {
    return has(key) ? parse_flag(word(key), qual(key)) : fallback;
  }

  std::vector<std::uint64_t> count_list(const std::string& key) {
    std::vector<std::uint64_t> out;
    for (double v : parse_number_list(word(key), qual(key))) {
      if (v < 0.0 || v != std::floor(v) || v > 9e15)
        throw std::invalid_argument(qual(key) + ": entries must be nonnegative integers");
      out.push_back(static_cast<std::uint64_t>(v));
    }
    return out;
  }

  // Rejects parameters that no reader consumed: misspelled or inapplicable
  // names fail loudly instead of being silently ignored.
  void finish() const {
    for (const auto& [key, value] : kv_) {
      if (!used_.count(key))
        throw std::invalid_argument(qual(key) + ": unknown parameter for this " + section_);
    }
  }

 private:
  std::string qual(const std::string& key) const { return section_ + "." + key; }
  std::map<std::string, std::string> kv_;
  std::string section_;
  std::set<std::string> used_;
};

vec broadcast(std::vector<double> values, std::size_t dim, const std::string& key) {
  if (values.size() == dim) return values;
  if (values.size() == 1) return vec(dim, values[0]);
  throw std::invalid_argument(key + ": expected 1 or " + std::to_string(dim) + " entries");
}

feasible_set read_set(param_reader& p, std::size_t dim, const std::string& fallback) {
  const std::string kind = p.word_or("set", fallback);
  if (kind == "all") return all_of_space{};
  if (kind == "ball") return l2_ball{p.number("radius")};
  if (kind == "box") {
    return box{broadcast(p.list("lo"), dim, "learner.lo"),
               broadcast(p.list("hi"), dim, "learner.hi")};
  }
  if (kind == "simplex") return simplex{dim};
  throw std::invalid_argument("learner.set: unknown set '" + kind + "'");
}

vec read_x0(param_reader& p, std::size_t dim) {
  if (!p.has("x0")) return zeros(dim);
  return broadcast(p.list("x0"), dim, "learner.x0");
}

enum class protocol { full_info, adv_bandit, stoch_bandit };

struct learner_instance {
  protocol proto = protocol::full_info;
  learner_ptr full;
  std::optional<adv_bandit_state> adv;
  std::optional<stoch_bandit_state> stoch;
};

// Tuned rates that depend on the run shape; spelled out so configs can say
// eta = auto and still be reproducible from the documented formulas.
double auto_eta(const std::string& name, std::size_t dim, std::size_t horizon,
                double loss_bound) {
  const double d = static_cast<double>(dim);
  const double T = static_cast<double>(horizon);
  if (name == "eg") return std::sqrt(2.0 * std::log(d) / T);
  if (name == "exp3") return std::sqrt(std::log(d) / (d * loss_bound * loss_bound * T));
  if (name == "tsallis") return 1.0 / (loss_bound * std::sqrt(T));
  throw std::invalid_argument("learner.eta: auto is not defined for " + name);
}

double read_eta(param_reader& p, const std::string& name, std::size_t dim,
                std::size_t horizon, double loss_bound) {
  const std::string raw = p.word("eta");
  if (raw == "auto") return auto_eta(name, dim, horizon, loss_bound);
  return parse_number(raw, "learner.eta");
}

learner_instance build_learner(const std::string& name,
                               const std::map<std::string, std::string>& params,
                               std::size_t dim, std::size_t horizon) {
  param_reader p(params, "learner");
  learner_instance out;

  if (name == "zero") {
    out.full = make_zero_learner(dim);
  } else if (name == "osd_decaying") {
    out.full = make_osd_learner(make_osd(read_x0(p, dim), read_set(p, dim, "all"),
                                         decaying_step{p.number("diameter"),
                                                       p.number("lipschitz")}));
  } else if (name == "osd_adaptive") {
    out.full = make_osd_learner(make_osd(read_x0(p, dim), read_set(p, dim, "all"),
                                         adaptive_global_step{p.number("diameter")}));
  } else if (name == "osd_constant") {
    out.full = make_osd_learner(
        make_osd(read_x0(p, dim), read_set(p, dim, "all"), constant_step{p.number("eta")}));
  } else if (name == "adagrad") {
    box domain{broadcast(p.list("lo"), dim, "learner.lo"),
               broadcast(p.list("hi"), dim, "learner.hi")};
    out.full = make_adagrad_learner(make_adagrad(read_x0(p, dim), std::move(domain)));
  } else if (name == "eg") {
    out.full = make_eg_learner(make_eg(dim, read_eta(p, name, dim, horizon, 1.0)));
  } else if (name == "pnorm") {
    out.full = make_pnorm_learner(make_pnorm(read_x0(p, dim), p.number("p"), p.number("eta")));
  } else if (name == "adahedge") {
    const double alpha = p.number_or("alpha", std::sqrt(std::log(static_cast<double>(dim))));
    out.full = make_adahedge_learner(make_adahedge(dim, alpha));
  } else if (name == "entropic_ftrl") {
    out.full = make_entropic_ftrl_learner(make_entropic_ftrl(dim), p.number("alpha"),
                                          p.number("linf"));
  } else if (name == "ftrl_lin") {
    out.full = make_ftrl_lin_learner(
        make_ftrl_lin(dim, read_set(p, dim, "all"),
                      ftrl_lambda{p.number("lambda"), p.flag_or("sqrt_t", true)}));
  } else if (name == "ftl_linear") {
    // follow-the-leader for linear losses on a compact set: vanishing
    // regularization turns the regularized leader into the plain leader
    out.full = make_ftrl_lin_learner(
        make_ftrl_lin(dim, read_set(p, dim, "box"), ftrl_lambda{1e-12, false}));
  } else if (name == "ftl_quadratic") {
    // follow-the-leader for mu-strongly-curved losses; mu = 2 makes the
    // leader of squared-distance games the running mean of the targets
    out.full = make_quadratized_learner(make_quadratized(dim), p.number_or("mu", 2.0));
  } else if (name == "ons") {
    out.full = make_ons_learner(
        make_ons(dim, read_set(p, dim, "ball"), p.number("lambda"), p.number("mu")));
  } else if (name == "kt_oco") {
    if (dim != 1)
      throw std::invalid_argument("learner.name: kt_oco is one-dimensional, environment is not");
    out.full = make_kt_oco_learner(p.number_or("epsilon", 1.0));
  } else if (name == "coord_kt") {
    out.full = p.has("epsilon") ? make_coord_kt_learner(dim, p.number("epsilon"))
                                : make_coord_kt_learner(dim);
  } else if (name == "dir_mag") {
    out.full = make_dir_mag_learner(dim, p.number_or("epsilon", 1.0));
  } else if (name == "exp3") {
    out.proto = protocol::adv_bandit;
    const double lb = p.number_or("loss_bound", 1.0);
    out.adv = make_exp3(dim, read_eta(p, name, dim, horizon, lb), lb);
  } else if (name == "explore_mix") {
    out.proto = protocol::adv_bandit;
    const double lb = p.number_or("loss_bound", 1.0);
    out.adv = make_explore_mix(dim, read_eta(p, "exp3", dim, horizon, lb),
                               p.number("alpha"), lb);
  } else if (name == "tsallis") {
    out.proto = protocol::adv_bandit;
    out.adv = make_tsallis(dim, read_eta(p, name, dim, horizon, p.number_or("loss_bound", 1.0)));
  } else if (name == "ucb") {
    out.proto = protocol::stoch_bandit;
    out.stoch = make_ucb(dim, p.number("alpha"));
  } else if (name == "etc") {
    out.proto = protocol::stoch_bandit;
    out.stoch = make_etc(dim, static_cast<std::size_t>(p.count("m")), horizon);
  } else {
    throw std::invalid_argument("learner.name: unknown learner '" + name + "'");
  }

  p.finish();
  return out;
}

struct env_build {
  environment_kind kind;
  bool random_targets = false;
};

env_build read_environment(param_reader& p, std::size_t horizon) {
  const std::string name = p.word("name");
  env_build out;
  if (name == "guessing_game") {
    const std::string targets = p.word("targets");
    if (targets == "random") {
      out.random_targets = true;
      out.kind = guessing_game{{0.5}};  // placeholder, redrawn per seed
    } else {
      std::vector<double> base = parse_number_list(targets, "environment.targets");
      // short lists are tiled to the horizon, so a constant game is one entry
      std::vector<double> y(std::max<std::size_t>(horizon, 1));
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = base[i % base.size()];
      out.kind = guessing_game{std::move(y)};
    }
  } else if (name == "ftl_failure") {
    out.kind = ftl_failure{};
  } else if (name == "rademacher") {
    out.kind = rademacher_olo{p.number("lipschitz"), p.number("diameter"),
                              p.list("direction")};
  } else if (name == "iid_linear") {
    out.kind = iid_linear{p.list("mean"), p.number("sigma")};
  } else if (name == "arms") {
    const std::string kind = p.word_or("kind", "bernoulli");
    std::vector<double> means = p.list("means");
    std::vector<arm_model> arms;
    if (kind == "bernoulli") {
      for (double m : means) arms.push_back({arm_kind::bernoulli, m, 0.0});
    } else if (kind == "gaussian") {
      const double sigma = p.number_or("sigma", 1.0);
      for (double m : means) arms.push_back({arm_kind::gaussian, m, sigma});
    } else {
      throw std::invalid_argument("environment.kind: unknown arm kind '" + kind + "'");
    }
    out.kind = stochastic_arms{std::move(arms)};
  } else if (name == "fixed") {
    const std::string loss = p.word("loss");
    const double scale = p.number_or("scale", 1.0);
    if (loss == "linear") {
      out.kind = fixed_convex{loss_spec{linear_loss{p.list("gradient")}, scale}};
    } else if (loss == "squared_distance") {
      out.kind = fixed_convex{loss_spec{squared_distance_loss{p.list("target")}, scale}};
    } else if (loss == "absolute") {
      out.kind = fixed_convex{loss_spec{absolute_loss{p.number("target")}, scale}};
    } else {
      throw std::invalid_argument("environment.loss: unknown fixed loss '" + loss + "'");
    }
  } else {
    throw std::invalid_argument("environment.name: unknown environment '" + name + "'");
  }
  p.finish();
  return out;
}

competitor_spec read_competitor(param_reader& p, std::size_t dim) {
  competitor_spec out;
  const std::string kind = p.word_or("kind", "fixed");
  if (kind == "fixed") {
    out.k = competitor_spec::kind::fixed;
    out.point = p.has("point") ? broadcast(p.list("point"), dim, "competitor.point")
                               : zeros(dim);
  } else if (kind == "grid") {
    out.k = competitor_spec::kind::grid;
    out.lo = broadcast(p.list("lo"), dim, "competitor.lo");
    out.hi = broadcast(p.list("hi"), dim, "competitor.hi");
    out.steps = static_cast<std::size_t>(p.count("steps"));
    if (out.steps == 0) throw std::invalid_argument("competitor.steps: must be at least 1");
    double total = 1.0;
    for (std::size_t i = 0; i < dim; ++i) total *= static_cast<double>(out.steps);
    if (total > 1e5)
      throw std::invalid_argument("competitor.steps: grid larger than 100000 points");
  } else if (kind == "best_arm") {
    out.k = competitor_spec::kind::best_arm;
  } else {
    throw std::invalid_argument("competitor.kind: unknown competitor '" + kind + "'");
  }
  p.finish();
  return out;
}

std::map<std::string, std::string> section_of(const config_map& raw, const std::string& name) {
  std::map<std::string, std::string> out;
  const std::string prefix = name + ".";
  for (const auto& [key, value] : raw) {
    if (key.rfind(prefix, 0) == 0) out[key.substr(prefix.size())] = value;
  }
  return out;
}

std::vector<vec> grid_points(const competitor_spec& comp, std::size_t dim) {
  std::vector<vec> points;
  std::vector<std::size_t> idx(dim, 0);
  while (true) {
    vec point(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      point[i] = comp.steps == 1 ? comp.lo[i]
                                 : comp.lo[i] + (comp.hi[i] - comp.lo[i]) *
                                                    static_cast<double>(idx[i]) /
                                                    static_cast<double>(comp.steps - 1);
    }
    points.push_back(std::move(point));
    std::size_t axis = 0;
    while (axis < dim && ++idx[axis] == comp.steps) idx[axis++] = 0;
    if (axis == dim) break;
  }
  return points;
}

void append_real(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  out += buf;
}

// Per-seed game. Pure function of (cfg, master seed): the environment, the
// sampling policy, and any generated targets each get their own derived
// substream, so runs are reproducible no matter how seeds are scheduled.
seed_run play_one_seed(const experiment_config& cfg, std::uint64_t master) {
  environment_kind kind = cfg.env_template;
  if (cfg.random_targets) {
    auto rng = make_rng(seed_for_role(master, 3));
    auto& game = std::get<guessing_game>(kind);
    game.y.assign(cfg.horizon, 0.0);
    for (double& v : game.y) v = uniform01(rng);
  }
  const environment env = make_environment(std::move(kind), seed_for_role(master, 1));
  const std::size_t dim = env_dim(env);

  learner_instance inst = build_learner(cfg.learner_name, cfg.learner_params, dim, cfg.horizon);
  auto policy_rng = make_rng(seed_for_role(master, 2));

  // competitor bookkeeping
  std::vector<vec> grid;
  std::vector<double> grid_cum;
  double fixed_cum = 0.0;
  double best_arm_mean = 0.0;
  switch (cfg.competitor.k) {
    case competitor_spec::kind::fixed:
      if (cfg.competitor.point.size() != dim)
        throw std::invalid_argument("competitor.point: dimension mismatch with environment");
      break;
    case competitor_spec::kind::grid:
      if (cfg.competitor.lo.size() != dim)
        throw std::invalid_argument("competitor.lo: dimension mismatch with environment");
      grid = grid_points(cfg.competitor, dim);
      grid_cum.assign(grid.size(), 0.0);
      break;
    case competitor_spec::kind::best_arm: {
      const auto* arms = std::get_if<stochastic_arms>(&cfg.env_template);
      if (arms == nullptr)
        throw std::invalid_argument("competitor.kind: best_arm needs the arms environment");
      best_arm_mean = arms->arms[0].mean;
      for (const auto& a : arms->arms) best_arm_mean = std::min(best_arm_mean, a.mean);
      break;
    }
  }

  seed_run out;
  out.seed = master;
  out.rounds.reserve(cfg.horizon);
  run_metadata meta{cfg.horizon, dim, {}};
  meta.grads.reserve(cfg.horizon);

  double cum = 0.0, comp_cum = 0.0;
  for (std::size_t t = 1; t <= cfg.horizon; ++t) {
    const loss_spec ls = next_loss(env, t);
    double loss = 0.0;

    if (inst.proto == protocol::full_info) {
      const vec x = inst.full->predict();
      loss = evaluate(ls, x);
      vec g = subgradient(ls, x);
      inst.full->observe(g);
      meta.grads.push_back(std::move(g));
    } else {
      const auto* lin = std::get_if<linear_loss>(&ls.form);
      if (lin == nullptr)
        throw std::invalid_argument("learner.name: bandit learners need per-arm linear losses");
      vec g = lin->g;
      if (ls.scale != 1.0) g = scaled(g, ls.scale);
      std::size_t arm = 0;
      if (inst.proto == protocol::adv_bandit) {
        arm = sample_arm(sampling_distribution(*inst.adv), policy_rng);
        const double observed = g[arm];
        switch (inst.adv->algo) {
          case adv_bandit_algo::exp3:
            inst.adv = exp3_step(*inst.adv, arm, observed);
            break;
          case adv_bandit_algo::explore_mix:
            inst.adv = explore_mix_step(*inst.adv, arm, observed);
            break;
          case adv_bandit_algo::tsallis:
            inst.adv = tsallis_step(*inst.adv, arm, observed);
            break;
        }
        loss = observed;
      } else {
        arm = stoch_choose(*inst.stoch);
        loss = g[arm];
        inst.stoch = stoch_update(*inst.stoch, arm, loss);
      }
      meta.grads.push_back(std::move(g));
    }

    switch (cfg.competitor.k) {
      case competitor_spec::kind::fixed:
        fixed_cum += evaluate(ls, cfg.competitor.point);
        comp_cum = fixed_cum;
        break;
      case competitor_spec::kind::grid: {
        for (std::size_t i = 0; i < grid.size(); ++i) grid_cum[i] += evaluate(ls, grid[i]);
        comp_cum = *std::min_element(grid_cum.begin(), grid_cum.end());
        break;
      }
      case competitor_spec::kind::best_arm:
        comp_cum += best_arm_mean;
        break;
    }

    cum += loss;
    round_record rec;
    rec.round = t;
    rec.loss = loss;
    rec.cum_loss = cum;
    rec.competitor_cum_loss = comp_cum;
    rec.regret = cum - comp_cum;
    rec.bound = std::numeric_limits<double>::quiet_NaN();
    out.rounds.push_back(rec);
  }

  if (cfg.bound.kind != "none") {
    const std::vector<double> curve = bound_curve(cfg.bound, meta);
    for (std::size_t t = 0; t < out.rounds.size(); ++t) out.rounds[t].bound = curve[t];
  }

  out.final_regret = out.rounds.empty() ? 0.0 : out.rounds.back().regret;
  out.csv_text = format_csv(out.rounds);
  return out;
}

}  // namespace

std::uint64_t seed_for_role(std::uint64_t master_seed, std::uint64_t role) {
  return derive_seed(master_seed, role);
}

config_map parse_config_text(const std::string& text) {
  config_map out;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key or value");
    if (!out.emplace(key, value).second)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");
  }
  return out;
}

config_map load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

experiment_config make_experiment_config(const config_map& raw) {
  for (const auto& [key, value] : raw) {
    const std::size_t dot = key.find('.');
    const std::string section = key.substr(0, dot == std::string::npos ? key.size() : dot);
    if (section != "learner" && section != "environment" && section != "run" &&
        section != "competitor" && section != "bound")
      throw std::invalid_argument(key + ": unknown config section");
    if (dot == std::string::npos || dot + 1 == key.size())
      throw std::invalid_argument(key + ": expected section.parameter");
  }

  experiment_config cfg;

  param_reader run(section_of(raw, "run"), "run");
  cfg.horizon = static_cast<std::size_t>(run.count("horizon"));
  if (cfg.horizon < 1) throw std::invalid_argument("run.horizon: must be at least 1");
  cfg.seeds = run.count_list("seeds");
  if (cfg.seeds.empty()) throw std::invalid_argument("run.seeds: need at least one seed");
  cfg.threads = static_cast<std::size_t>(run.count_or("threads", 1));
  if (cfg.threads < 1) throw std::invalid_argument("run.threads: must be at least 1");
  if (run.has("out")) cfg.out = run.word("out");
  run.finish();

  param_reader envp(section_of(raw, "environment"), "environment");
  env_build env = read_environment(envp, cfg.horizon);
  cfg.env_template = std::move(env.kind);
  cfg.random_targets = env.random_targets;

  auto learner_kv = section_of(raw, "learner");
  auto it = learner_kv.find("name");
  if (it == learner_kv.end()) throw std::invalid_argument("learner.name: required");
  cfg.learner_name = trim(it->second);
  learner_kv.erase(it);
  cfg.learner_params = std::move(learner_kv);

  const environment probe_env =
      make_environment(environment_kind(cfg.env_template), seed_for_role(cfg.seeds[0], 1));
  const std::size_t dim = env_dim(probe_env);

  param_reader comp(section_of(raw, "competitor"), "competitor");
  cfg.competitor = read_competitor(comp, dim);
  if (cfg.competitor.k == competitor_spec::kind::best_arm &&
      !std::holds_alternative<stochastic_arms>(cfg.env_template))
    throw std::invalid_argument("competitor.kind: best_arm needs the arms environment");

  auto bound_kv = section_of(raw, "bound");
  param_reader boundp(bound_kv, "bound");
  cfg.bound.kind = boundp.word_or("kind", "none");
  const std::string direction = boundp.word_or("direction", "upper");
  if (direction != "upper" && direction != "lower")
    throw std::invalid_argument("bound.direction: expected upper or lower");
  cfg.bound.lower = direction == "lower";
  cfg.bound_aggregate = boundp.word_or("aggregate", "max");
  if (cfg.bound_aggregate != "max" && cfg.bound_aggregate != "mean")
    throw std::invalid_argument("bound.aggregate: expected max or mean");
  bound_kv.erase("kind");
  bound_kv.erase("direction");
  bound_kv.erase("aggregate");
  cfg.bound.params = std::move(bound_kv);

  // probe builds: reject bad learner parameters and bound constants now,
  // before any game runs
  build_learner(cfg.learner_name, cfg.learner_params, dim, cfg.horizon);
  if (cfg.bound.kind != "none") bound_curve(cfg.bound, run_metadata{cfg.horizon, dim, {}});

  return cfg;
}

std::string format_csv(const std::vector<round_record>& rounds) {
  std::string out = "round,loss,cum_loss,competitor_cum_loss,regret,bound\n";
  for (const auto& r : rounds) {
    out += std::to_string(r.round);
    out += ',';
    append_real(out, r.loss);
    out += ',';
    append_real(out, r.cum_loss);
    out += ',';
    append_real(out, r.competitor_cum_loss);
    out += ',';
    append_real(out, r.regret);
    out += ',';
    append_real(out, r.bound);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<round_record>& rounds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write CSV file: " + path);
  out << format_csv(rounds);
  if (!out) throw std::runtime_error("failed writing CSV file: " + path);
}

std::vector<double> bound_curve(const bound_spec& spec, const run_metadata& meta) {
  if (meta.horizon < 1) throw std::invalid_argument("bound curve: horizon must be at least 1");
  param_reader p(spec.params, "bound");
  const std::size_t T = meta.horizon;
  std::vector<double> curve(T, 0.0);

  auto need_dim = [&]() {
    if (meta.dim < 1) throw std::invalid_argument("bound curve: metadata dim missing");
    return static_cast<double>(meta.dim);
  };
  // running sums over the provided gradient history; rounds past the end of
  // meta.grads contribute nothing, so static probes can pass an empty list
  auto prefix_scan = [&](auto per_round) {
    std::vector<double> sums(T, 0.0);
    double acc = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      if (t < meta.grads.size()) acc += per_round(meta.grads[t]);
      sums[t] = acc;
    }
    return sums;
  };

  if (spec.kind == "osd_decaying") {
    const double d = p.number("diameter"), l = p.number("lipschitz");
    for (std::size_t t = 1; t <= T; ++t)
      curve[t - 1] = 1.5 * d * l * std::sqrt(static_cast<double>(t));
  } else if (spec.kind == "adaptive_global") {
    const double d = p.number("diameter");
    auto sums = prefix_scan([](const vec& g) { return norm2_sq(g); });
    for (std::size_t t = 1; t <= T; ++t)
      curve[t - 1] = std::sqrt(2.0) * d * std::sqrt(sums[t - 1]);
  } else if (spec.kind == "adagrad") {
    const std::size_t dim = static_cast<std::size_t>(need_dim());
    const vec lo = broadcast(p.list("lo"), dim, "bound.lo");
    const vec hi = broadcast(p.list("hi"), dim, "bound.hi");
    vec per_coord = zeros(dim);
    for (std::size_t t = 1; t <= T; ++t) {
      if (t - 1 < meta.grads.size()) {
        const vec& g = meta.grads[t - 1];
        if (g.size() != dim) throw std::invalid_argument("bound curve: gradient dim mismatch");
        for (std::size_t i = 0; i < dim; ++i) per_coord[i] += g[i] * g[i];
      }
      double total = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        total += (hi[i] - lo[i]) * std::sqrt(per_coord[i]);
      curve[t - 1] = std::sqrt(2.0) * total;
    }
  } else if (spec.kind == "log_guessing") {
    for (std::size_t t = 1; t <= T; ++t)
      curve[t - 1] = 4.0 + 4.0 * std::log(static_cast<double>(t));
  } else if (spec.kind == "linear_offset") {
    const double offset = p.number_or("offset", 2.0);
    for (std::size_t t = 1; t <= T; ++t) curve[t - 1] = static_cast<double>(t) - offset;
  } else if (spec.kind == "eg") {
    const double lnd = std::log(need_dim());
    for (std::size_t t = 1; t <= T; ++t)
      curve[t - 1] = 0.5 * std::sqrt(2.0) * std::sqrt(static_cast<double>(t) * lnd);
  } else if (spec.kind == "adahedge") {
    const double lnd = std::log(need_dim());
    auto sums = prefix_scan([](const vec& g) {
      const double m = norm_inf(g);
      return m * m;
    });
    for (std::size_t t = 1; t <= T; ++t)
      curve[t - 1] = 2.0 * std::sqrt((4.0 + lnd) * sums[t - 1]);
  } else if (spec.kind == "kl_experts") {
    const double kl = p.number("kl");
    for (std::size_t t = 1; t <= T; ++t)
      curve[t - 1] =
          std::sqrt(4.0 * static_cast<double>(t) * (kl + 0.5 * std::log(2.0)));
  } else if (spec.kind == "exp3") {
    const double d = need_dim();
    for (std::size_t t = 1; t <= T; ++t)
      curve[t - 1] = std::sqrt(2.0) * std::sqrt(d * static_cast<double>(t) * std::log(d));
  } else if (spec.kind == "tsallis") {
    const double d = need_dim();
    for (std::size_t t = 1; t <= T; ++t)
      curve[t - 1] = 4.0 * std::sqrt(d * static_cast<double>(t));
  } else if (spec.kind == "ucb") {
    const double alpha = p.number("alpha");
    if (alpha <= 2.0) throw std::invalid_argument("bound.alpha: needs alpha > 2");
    const std::vector<double> gaps = p.list("gaps");
    double gap_sum = 0.0, inv_sum = 0.0;
    for (double g : gaps) {
      if (g < 0.0) throw std::invalid_argument("bound.gaps: gaps must be nonnegative");
      gap_sum += g;
      if (g > 0.0) inv_sum += 1.0 / g;
    }
    for (std::size_t t = 1; t <= T; ++t)
      curve[t - 1] = alpha / (alpha - 2.0) * gap_sum +
                     8.0 * alpha * std::log(static_cast<double>(t)) * inv_sum;
  } else if (spec.kind == "etc") {
    const double gap = p.number("gap");
    if (gap <= 0.0) throw std::invalid_argument("bound.gap: must be positive");
    for (std::size_t t = 1; t <= T; ++t) {
      const double tg = static_cast<double>(t) * gap * gap / 4.0;
      curve[t - 1] = gap + 4.0 / gap * (1.0 + std::max(std::log(tg), 0.0));
    }
  } else if (spec.kind == "vaw") {
    const double lambda = p.number("lambda");
    const double y_max = p.number("y_max");
    const double radius = p.number("radius");
    const double u_norm_sq = p.number("u_norm_sq");
    const double d = need_dim();
    for (std::size_t t = 1; t <= T; ++t)
      curve[t - 1] = 0.5 * lambda * u_norm_sq +
                     0.5 * d * y_max * y_max *
                         std::log1p(radius * radius * static_cast<double>(t) / (lambda * d));
  } else {
    throw std::invalid_argument("bound.kind: unknown curve '" + spec.kind + "'");
  }

  p.finish();
  return curve;
}

experiment_summary run_experiment(const experiment_config& cfg) {
  if (cfg.horizon < 1) throw std::invalid_argument("run.horizon: must be at least 1");
  if (cfg.seeds.empty()) throw std::invalid_argument("run.seeds: need at least one seed");

  experiment_summary summary;
  summary.runs.resize(cfg.seeds.size());

  // fan out across seeds in fixed-size batches; results land in seed-list
  // order, so the output bytes cannot depend on the batch width
  const std::size_t batch = std::max<std::size_t>(cfg.threads, 1);
  for (std::size_t base = 0; base < cfg.seeds.size(); base += batch) {
    const std::size_t stop = std::min(cfg.seeds.size(), base + batch);
    std::vector<std::future<seed_run>> futures;
    futures.reserve(stop - base);
    for (std::size_t i = base; i < stop; ++i) {
      futures.push_back(std::async(std::launch::async,
                                   [&cfg, seed = cfg.seeds[i]]() { return play_one_seed(cfg, seed); }));
    }
    for (std::size_t i = base; i < stop; ++i) summary.runs[i] = futures[i - base].get();
  }

  double total = 0.0, worst = -std::numeric_limits<double>::infinity();
  for (auto& run : summary.runs) {
    total += run.final_regret;
    worst = std::max(worst, run.final_regret);
    if (!cfg.out.empty()) {
      run.csv_path = cfg.out + ".s" + std::to_string(run.seed) + ".csv";
      const auto parent = std::filesystem::path(run.csv_path).parent_path();
      if (!parent.empty()) std::filesystem::create_directories(parent);
      std::ofstream file(run.csv_path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write CSV file: " + run.csv_path);
      file << run.csv_text;
      if (!file) throw std::runtime_error("failed writing CSV file: " + run.csv_path);
    }
  }
  summary.mean_final_regret = total / static_cast<double>(summary.runs.size());
  summary.max_final_regret = worst;

  summary.bound_checked = cfg.bound.kind != "none";
  if (summary.bound_checked) {
    if (cfg.bound_aggregate == "max") {
      for (const auto& run : summary.runs) {
        const double limit = run.rounds.back().bound;
        const bool ok = cfg.bound.lower ? run.final_regret >= limit : run.final_regret <= limit;
        if (!ok) summary.bound_pass = false;
      }
    } else {
      double mean_limit = 0.0;
      for (const auto& run : summary.runs) mean_limit += run.rounds.back().bound;
      mean_limit /= static_cast<double>(summary.runs.size());
      summary.bound_pass = cfg.bound.lower ? summary.mean_final_regret >= mean_limit
                                           : summary.mean_final_regret <= mean_limit;
    }
  }
  return summary;
}

}  // namespace oco
