#include "cli.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

namespace indextune::cli {

namespace fs = std::filesystem;

Scenario resolve_scenario(const RunConfig& config) {
  Scenario s = load_scenario(config.scenario);
  if (config.regime) s.regime = *config.regime;
  if (config.rounds) s.workload.rounds = *config.rounds;
  if (config.budget) s.tuning.budget = BudgetSpec::parse(*config.budget);
  if (config.alpha) {
    if (*config.alpha < 0.0) throw ScenarioError("--alpha must be >= 0");
    s.tuning.ucb.alpha.alpha = *config.alpha;
  }
  if (config.lambda) {
    if (!(*config.lambda > 0.0)) throw ScenarioError("--lambda must be > 0");
    s.tuning.ucb.lambda = *config.lambda;
  }
  if (config.max_key_width) {
    if (*config.max_key_width == 0) throw ScenarioError("--max-key-width must be >= 1");
    s.tuning.max_key_width = *config.max_key_width;
  }
  if (config.shift_threshold) s.tuning.shift_threshold = *config.shift_threshold;
  if (config.qoi_window) {
    if (*config.qoi_window == 0) throw ScenarioError("--qoi-window must be >= 1");
    s.tuning.qoi_window = *config.qoi_window;
  }
  if (config.seed) {
    s.seed = *config.seed;
    s.cost.rng_seed = *config.seed ^ 0x9e3779b97f4a7c15ULL;
  }
  return s;
}

fs::path default_output_dir() {
  if (const char* dir = std::getenv("INDEXTUNE_OUT_DIR"); dir != nullptr && *dir != '\0') {
    return dir;
  }
  return "indextune-out";
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  f << content;
  if (!f) throw std::runtime_error(fmt::format("write failed: {}", path.string()));
}

std::string rounds_csv(const ExperimentReport& report) {
  std::ostringstream s;
  write_rounds_csv(s, report);
  return s.str();
}

}  // namespace

RunResult cmd_run(const RunConfig& config) {
  const Scenario scenario = resolve_scenario(config);
  const Environment env = make_environment(scenario);
  auto options = tuning_from(scenario.tuning);
  options.timing = config.timing;

  RunResult result;
  result.label = scenario.name;
  // Refuse an oversized exhaustive search before spending time on the run.
  if (config.regret) {
    result.baseline = brute_force_optimum(env, options.max_key_width);
  }

  auto mab = run_experiment(env, options);
  if (result.baseline) attach_regret(mab, *result.baseline, config.regret_alpha);
  result.reports.push_back(std::move(mab));
  if (config.baseline_noindex) {
    auto none = run_baseline_noindex(env);
    if (result.baseline) attach_regret(none, *result.baseline, config.regret_alpha);
    result.reports.push_back(std::move(none));
  }

  fs::create_directories(config.out);
  write_file(config.out / "rounds.csv", rounds_csv(result.reports.front()));
  if (config.baseline_noindex) {
    write_file(config.out / "noindex_rounds.csv", rounds_csv(result.reports.back()));
  }

  nlohmann::ordered_json extra;
  extra["scenario"] = scenario.name;
  extra["regime"] = std::string(to_string(scenario.regime));
  extra["rounds"] = env.workload.size();
  extra["seed"] = scenario.seed;
  extra["budget_bytes"] = env.budget;
  extra["alpha"] = options.ucb.alpha.alpha;
  extra["lambda"] = options.ucb.lambda;
  if (result.baseline) {
    nlohmann::ordered_json b;
    b["regret_alpha"] = config.regret_alpha;
    b["configuration"] = result.baseline->super_arm.arm_ids;
    b["creation_s"] = result.baseline->creation_time;
    b["execution_s"] = result.baseline->execution_time;
    b["subsets_evaluated"] = result.baseline->subsets_evaluated;
    const auto series = regret_series(result.reports.front(), *result.baseline,
                                      config.regret_alpha);
    b["cumulative_regret_s"] = series.cumulative.empty() ? 0.0 : series.cumulative.back();
    extra["baseline"] = std::move(b);
  }
  std::ostringstream summary;
  write_summary_json(summary, result.reports, extra.dump());
  write_file(config.out / "summary.json", summary.str());
  return result;
}

std::vector<BreakdownRow> cmd_compare(const std::vector<RunConfig>& configs,
                                      const fs::path& out, std::size_t jobs,
                                      std::ostream& text) {
  if (configs.empty()) throw std::invalid_argument("compare needs at least one run");
  std::vector<std::optional<RunResult>> results(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        results[i] = cmd_run(configs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, configs.size());
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<BreakdownRow> rows;
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (const auto& report : results[i]->reports) {
      rows.push_back({fmt::format("{}#{}/{}", results[i]->label, i + 1, report.method),
                      report.totals()});
    }
  }
  fs::create_directories(out);
  std::ostringstream csv;
  write_breakdown_csv(csv, rows);
  write_file(out / "compare.csv", csv.str());
  write_breakdown_text(text, rows);
  return rows;
}

namespace {

void add_run_options(CLI::App& app, RunConfig& c, std::string& timing, std::string& regime,
                     std::string& baseline) {
  app.add_option("--rounds", c.rounds, "Number of rounds T");
  app.add_option("--budget", c.budget, "Memory budget: <m>x of the data size, or bytes");
  app.add_option("--alpha", c.alpha, "Exploration boost");
  app.add_option("--lambda", c.lambda, "Ridge regulariser");
  app.add_option("--seed", c.seed, "Workload and noise seed");
  app.add_option("--max-key-width", c.max_key_width, "Longest generated index key");
  app.add_option("--shift-threshold", c.shift_threshold, "Share of new templates that resets the model");
  app.add_option("--qoi-window", c.qoi_window, "Rounds a template stays of interest");
  app.add_option("--regime", regime, "Override workload regime")
      ->check(CLI::IsMember({"static", "shifting", "random"}));
  app.add_option("--timing", timing, "Recommendation timing: wall or none")
      ->check(CLI::IsMember({"wall", "none"}));
  app.add_flag("--regret", c.regret, "Compute regret against the best fixed configuration");
  app.add_option("--regret-alpha", c.regret_alpha, "Alpha of the reported alpha-regret");
  app.add_option("--baseline", baseline, "Also run a baseline")
      ->check(CLI::IsMember({"noindex"}));
}

void finish_run_options(RunConfig& c, const std::string& timing, const std::string& regime,
                        const std::string& baseline) {
  c.timing = timing == "none" ? Timing::none : Timing::wall;
  if (!regime.empty()) c.regime = parse_regime(regime);
  c.baseline_noindex = baseline == "noindex";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online index tuning with a contextual combinatorial bandit"};
  app.require_subcommand(1);

  RunConfig run;
  std::string run_timing = "wall", run_regime, run_baseline, run_out;
  auto* run_cmd = app.add_subcommand("run", "Tune one scenario and write per-round reports");
  run_cmd->add_option("--scenario", run.scenario, "Scenario JSON file")->required();
  run_cmd->add_option("--out", run_out, "Output directory");
  add_run_options(*run_cmd, run, run_timing, run_regime, run_baseline);

  RunConfig shared;
  std::vector<std::string> scenarios;
  std::string cmp_timing = "wall", cmp_regime, cmp_baseline, cmp_out;
  std::size_t jobs = 1;
  auto* cmp_cmd = app.add_subcommand("compare", "Run several scenarios and tabulate time breakdowns");
  cmp_cmd->add_option("--scenario", scenarios, "Scenario JSON file (repeatable)")->required();
  cmp_cmd->add_option("--out", cmp_out, "Output directory");
  cmp_cmd->add_option("--jobs", jobs, "Runs in parallel")->check(CLI::PositiveNumber);
  add_run_options(*cmp_cmd, shared, cmp_timing, cmp_regime, cmp_baseline);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*run_cmd) {
      finish_run_options(run, run_timing, run_regime, run_baseline);
      run.out = run_out.empty() ? default_output_dir() : fs::path(run_out);
      const auto result = cmd_run(run);
      std::vector<BreakdownRow> rows;
      for (const auto& r : result.reports) rows.push_back({r.method, r.totals()});
      write_breakdown_text(out, rows);
      if (result.baseline) {
        fmt::print(out, "best fixed configuration: {} arm(s), {} subsets searched\n",
                   result.baseline->configuration.size(), result.baseline->subsets_evaluated);
      }
      fmt::print(out, "wrote {}\n", (run.out / "rounds.csv").string());
      return 0;
    }
    finish_run_options(shared, cmp_timing, cmp_regime, cmp_baseline);
    const fs::path base = cmp_out.empty() ? default_output_dir() : fs::path(cmp_out);
    std::vector<RunConfig> configs;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
      RunConfig c = shared;
      c.scenario = scenarios[i];
      c.out = base / fmt::format("run{}", i + 1);
      configs.push_back(std::move(c));
    }
    cmd_compare(configs, base, jobs, out);
    return 0;
  } catch (const std::length_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  }
}

}  // namespace indextune::cli
