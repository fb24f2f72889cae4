// command line front end: play configured experiments, print bound curves,
// and run the named release-gate suites
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oco/acceptance.hpp"
#include "oco/harness.hpp"

namespace {

std::vector<int> parse_suite(const std::string& suite) {
  if (suite == "all") return oco::acceptance_ids();
  std::string tail = suite;
  if (tail.rfind("criterion_", 0) == 0) tail = tail.substr(10);
  if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("unknown suite '" + suite +
                                "' (expected all, criterion_NN, or a bare id)");
  }
  return {std::stoi(tail)};
}

int cmd_run(const std::string& config_path, const std::uint64_t* seed_override,
            const std::string* out_override) {
  oco::experiment_config cfg = oco::make_experiment_config(oco::load_config_file(config_path));
  if (seed_override != nullptr) cfg.seeds = {*seed_override};
  if (out_override != nullptr) cfg.out = *out_override;
  const oco::experiment_summary summary = oco::run_experiment(cfg);
  for (const auto& run : summary.runs) {
    std::printf("seed %llu  final_regret=%.12g", static_cast<unsigned long long>(run.seed),
                run.final_regret);
    if (!run.csv_path.empty()) std::printf("  csv=%s", run.csv_path.c_str());
    std::printf("\n");
  }
  std::printf("mean_final_regret=%.12g\n", summary.mean_final_regret);
  std::printf("max_final_regret=%.12g\n", summary.max_final_regret);
  if (!summary.bound_checked) {
    std::printf("bound=none\n");
    return 0;
  }
  std::printf("bound=%s\n", summary.bound_pass ? "pass" : "fail");
  return summary.bound_pass ? 0 : 1;
}

int cmd_bounds(const std::string& config_path) {
  oco::experiment_config cfg = oco::make_experiment_config(oco::load_config_file(config_path));
  if (cfg.bound.kind == "none") {
    throw std::invalid_argument("bounds: the config declares no bound section");
  }
  cfg.seeds.resize(1);  // the curve only needs one playthrough for its metadata
  cfg.out.clear();
  const oco::experiment_summary summary = oco::run_experiment(cfg);
  std::printf("round,bound\n");
  for (const auto& row : summary.runs.at(0).rounds) {
    std::printf("%llu,%.12g\n", static_cast<unsigned long long>(row.round), row.bound);
  }
  return 0;
}

int cmd_accept(const std::string& suite, const std::string& artifact_dir) {
  const std::vector<int> ids = parse_suite(suite);
  const auto t0 = std::chrono::steady_clock::now();
  int failed = 0;
  for (const int id : ids) {
    const oco::criterion_result r = oco::run_criterion(id, artifact_dir);
    std::printf("%s\n", oco::format_criterion_line(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("accept: %zu/%zu pass in %.2fs\n", ids.size() - failed, ids.size(), elapsed);
  return (failed == 0 && elapsed < 600.0) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online learning experiment lab"};
  app.require_subcommand(1);

  std::string run_config;
  std::uint64_t seed_override = 0;
  std::string out_override;
  auto* run = app.add_subcommand("run", "play a configured experiment and write csv logs");
  run->add_option("config", run_config, "flat key=value config file")->required();
  auto* seed_opt = run->add_option("--seed", seed_override, "replace the seed list");
  auto* out_opt = run->add_option("--out", out_override, "replace the csv output prefix");

  std::string suite = "all";
  std::string artifact_dir = "acceptance_artifacts";
  auto* accept = app.add_subcommand("accept", "run a named release-gate suite");
  accept->add_option("suite", suite, "all, criterion_NN, or a bare id")->required();
  accept->add_option("--artifacts", artifact_dir, "directory for csv artifacts");

  std::string bounds_config;
  auto* bounds = app.add_subcommand("bounds", "print the per-round bound curve of a config");
  bounds->add_option("config", bounds_config, "flat key=value config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      return cmd_run(run_config, seed_opt->count() > 0 ? &seed_override : nullptr,
                     out_opt->count() > 0 ? &out_override : nullptr);
    }
    if (accept->parsed()) return cmd_accept(suite, artifact_dir);
    if (bounds->parsed()) return cmd_bounds(bounds_config);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ocolab: %s\n", e.what());
    return 2;
  }
  return 2;
}
