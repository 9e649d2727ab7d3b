#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "indextune/bandit_core.hpp"
#include "indextune/oracle.hpp"
#include "indextune/schema.hpp"
#include "indextune/simenv.hpp"
#include "indextune/workload.hpp"

namespace indextune {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "1x", "0.25x" (multiple of the data size) or a plain byte count.
struct BudgetSpec {
  double value = 1.0;
  bool multiplier = true;

  /// Throws ScenarioError on anything that is not a positive number.
  static BudgetSpec parse(std::string_view text);
  double resolve(double data_size) const;
  std::string to_string() const;
};

struct TuningDefaults {
  UcbParameters ucb;
  std::size_t max_key_width = 3;
  double shift_threshold = 0.6;
  std::uint32_t qoi_window = 4;
  BudgetSpec budget;
  GreedyCriterion criterion = GreedyCriterion::best_of;
};

struct Scenario {
  std::string name;
  Schema schema;
  CostModel cost;
  Regime regime = Regime::kStatic;
  WorkloadSpec workload;
  std::uint64_t seed = 0;
  TuningDefaults tuning;
};

/// Throws ScenarioError with the offending field on malformed input.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace indextune
