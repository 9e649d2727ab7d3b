#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "indextune/harness.hpp"
#include "indextune/report.hpp"
#include "indextune/scenario.hpp"

namespace indextune::cli {

/// Command-line overrides on top of a scenario file's defaults.
struct RunConfig {
  std::filesystem::path scenario;
  std::optional<Regime> regime;
  std::optional<std::size_t> rounds;
  std::optional<std::string> budget;
  std::optional<double> alpha;
  std::optional<double> lambda;
  std::optional<std::size_t> max_key_width;
  std::optional<double> shift_threshold;
  std::optional<std::uint32_t> qoi_window;
  std::optional<std::uint64_t> seed;
  Timing timing = Timing::wall;
  bool regret = false;
  double regret_alpha = 1.0 - 0.36787944117144233;  // 1 - 1/e
  bool baseline_noindex = false;
  std::filesystem::path out;
};

/// Scenario with every override applied, validated.
Scenario resolve_scenario(const RunConfig& config);

/// Used when --out is not given: $INDEXTUNE_OUT_DIR, else ./indextune-out.
std::filesystem::path default_output_dir();

struct RunResult {
  std::string label;
  std::vector<ExperimentReport> reports;  // MAB first, then NoIndex if requested
  std::optional<RegretBaseline> baseline;
};

/// Runs one configuration and writes rounds.csv, summary.json (and
/// noindex_rounds.csv) into config.out. Throws on any error.
RunResult cmd_run(const RunConfig& config);

/// Runs every configuration (up to `jobs` at a time), each into its own
/// sub-directory of `out`, and writes the combined breakdown to
/// out/compare.csv and `text`.
std::vector<BreakdownRow> cmd_compare(const std::vector<RunConfig>& configs,
                                      const std::filesystem::path& out, std::size_t jobs,
                                      std::ostream& text);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace indextune::cli
