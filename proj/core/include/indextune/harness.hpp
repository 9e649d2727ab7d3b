#pragma once

// End-to-end tuning loop over a simulated database, plus the NoIndex and
// fixed-configuration baselines and regret against the best fixed
// configuration in hindsight.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "indextune/arms.hpp"
#include "indextune/bandit_core.hpp"
#include "indextune/oracle.hpp"
#include "indextune/scenario.hpp"
#include "indextune/simenv.hpp"
#include "indextune/workload.hpp"

namespace indextune {

enum class Timing {
  wall,  // monotonic wall clock around the recommendation steps
  none,  // recommendation time recorded as 0; output is reproducible bit for bit
};

struct TuningOptions {
  UcbParameters ucb;
  std::size_t max_key_width = 3;
  double shift_threshold = 0.6;
  std::uint32_t qoi_window = 4;
  OracleOptions oracle;
  Timing timing = Timing::wall;
  double usage_decay = 0.5;
};

TuningOptions tuning_from(const TuningDefaults& defaults);

struct RoundRecord {
  std::uint32_t round = 0;  // 1-based
  double c_rec = 0.0;
  double c_cre = 0.0;
  double c_exc = 0.0;
  double reward = 0.0;           // observed super-arm reward
  double expected_reward = 0.0;  // noise-free: exc(empty) - exc(s_t) - creation of new arms
  double expected_exc = 0.0;     // noise-free execution time of s_t on this round
  std::optional<double> regret;  // instantaneous, once a baseline is attached
  std::vector<ArmId> configuration;
  double shift_intensity = 0.0;
  bool forgot = false;
  std::size_t candidate_arms = 0;

  double total() const { return c_rec + c_cre + c_exc; }
};

struct TimeBreakdown {
  double recommendation = 0.0;
  double creation = 0.0;
  double execution = 0.0;

  double total() const { return recommendation + creation + execution; }
};

struct ExperimentReport {
  std::string method;
  std::vector<RoundRecord> rounds;
  std::vector<std::uint32_t> forget_rounds;

  TimeBreakdown totals() const;
};

/// Everything one run needs. The simulator is rebuilt from schema and cost
/// for every run so runs never share noise state.
struct Environment {
  Schema schema;
  CostModel cost;
  Workload workload;
  double budget = 0.0;  // bytes
};

/// Generates the scenario's workload and resolves its budget.
Environment make_environment(const Scenario& scenario);

ExperimentReport run_experiment(const Environment& env, const TuningOptions& options);

/// Every round with the empty configuration.
ExperimentReport run_baseline_noindex(const Environment& env);

/// Builds `config` before round 1 (creation charged in round 1) and keeps it.
ExperimentReport run_fixed_configuration(const Environment& env, std::span<const IndexArm> config,
                                         std::string method = "Fixed");

/// Distinct templates of a workload slice, in first-seen order.
std::vector<QueryTemplateInfo> workload_templates(std::span<const RoundWorkload> rounds);

/// Candidate arms for every template of the workload slice.
std::vector<IndexArm> full_arm_pool(const Schema& schema, std::span<const RoundWorkload> rounds,
                                    std::size_t max_key_width);

inline constexpr std::size_t kMaxBruteForceArms = 20;

struct RegretBaseline {
  std::vector<IndexArm> configuration;  // s*, sorted by id
  SuperArm super_arm;
  double creation_time = 0.0;            // noise-free, charged once
  double execution_time = 0.0;           // noise-free, whole sequence
  std::vector<double> round_reward;      // R*_t
  std::vector<double> round_execution;   // noise-free exc of s* per round
  std::uint64_t subsets_evaluated = 0;

  double objective() const { return creation_time + execution_time; }
};

/// Exhaustive search over every budget-feasible subset of `pool` for the
/// fixed configuration minimising noise-free execution over `rounds` plus
/// creation charged once. Throws std::length_error when the pool has more
/// than `max_arms` arms.
RegretBaseline brute_force_optimum(const Schema& schema, const CostModel& cost,
                                   std::span<const RoundWorkload> rounds,
                                   std::span<const IndexArm> pool, double budget,
                                   std::size_t max_arms = kMaxBruteForceArms);

/// Convenience: pool = full_arm_pool(env.workload).
RegretBaseline brute_force_optimum(const Environment& env, std::size_t max_key_width,
                                   std::size_t max_arms = kMaxBruteForceArms);

/// Noise-free reward of playing `config` in one round given the previous
/// configuration: exc(empty) - exc(config) - creation of arms not in `previous`.
double expected_round_reward(const Simulator& sim, std::span<const QueryInstance> round,
                             std::span<const IndexArm> config, const std::set<ArmId>& previous);

struct RegretSeries {
  std::vector<double> instantaneous;
  std::vector<double> cumulative;
};

/// Reg_t = alpha * R*_t - R_t on noise-free rewards. Throws
/// std::invalid_argument when the series lengths differ.
RegretSeries regret_series(const ExperimentReport& report, const RegretBaseline& baseline,
                           double alpha);

/// Fills RoundRecord::regret from regret_series.
void attach_regret(ExperimentReport& report, const RegretBaseline& baseline, double alpha);

}  // namespace indextune
