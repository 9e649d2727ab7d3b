#include <gtest/gtest.h>

#include <cmath>

#include "indextune/harness.hpp"
#include "indextune/random.hpp"

using namespace indextune;

namespace {

Scenario small_scenario(Regime regime = Regime::kStatic, std::size_t rounds = 12) {
  Scenario s;
  s.name = "unit";
  const auto t = s.schema.add_table("t", 2'000'000);
  const auto a = s.schema.add_column(t, "a", 8, 1000);
  const auto b = s.schema.add_column(t, "b", 8, 1000);
  const auto c = s.schema.add_column(t, "c", 8, 1000);
  s.schema.add_column(t, "pad", 76, 1000);
  const auto u = s.schema.add_table("u", 500'000);
  const auto x = s.schema.add_column(u, "x", 4, 100);
  const auto y = s.schema.add_column(u, "y", 8, 100);
  s.schema.add_column(u, "pad", 40, 100);

  auto tmpl = [](std::string name, TableId table, std::vector<ColumnId> preds, double sel,
                 std::vector<ColumnId> payload) {
    QueryTemplateSpec q;
    q.name = std::move(name);
    TableAccessTemplate acc;
    acc.table = table;
    for (auto p : preds) acc.predicates.push_back({p, sel, sel * 2});
    acc.payload = std::move(payload);
    q.accesses.push_back(acc);
    return q;
  };
  s.workload.templates = {tmpl("q1", t, {a}, 0.001, {c}), tmpl("q2", t, {b}, 0.002, {}),
                          tmpl("q3", u, {x}, 0.01, {y}), tmpl("q4", u, {y}, 0.01, {})};
  s.workload.rounds = rounds;
  s.workload.groups = 2;
  s.workload.rounds_per_group = 10;
  s.regime = regime;
  s.seed = 5;
  s.cost.noise_sigma = 0.05;
  s.cost.rng_seed = 3;
  return s;
}

TuningOptions quiet_options() {
  TuningOptions o;
  o.timing = Timing::none;
  return o;
}

}  // namespace

TEST(RunExperiment, ZeroRoundsGiveEmptyReport) {
  const auto env = make_environment(small_scenario(Regime::kStatic, 0));
  const auto r = run_experiment(env, quiet_options());
  EXPECT_TRUE(r.rounds.empty());
  EXPECT_EQ(r.totals().total(), 0.0);
}

TEST(RunExperiment, FirstRoundStartsFromEmptyConfiguration) {
  const auto env = make_environment(small_scenario());
  const auto r = run_experiment(env, quiet_options());
  ASSERT_EQ(r.rounds.size(), 12u);
  EXPECT_TRUE(r.rounds[0].configuration.empty());
  EXPECT_EQ(r.rounds[0].c_cre, 0.0);
  EXPECT_EQ(r.rounds[0].candidate_arms, 0u);
  EXPECT_GT(r.rounds[1].candidate_arms, 0u);
}

TEST(RunExperiment, TimeAccountingCloses) {
  const auto env = make_environment(small_scenario());
  auto o = quiet_options();
  o.timing = Timing::wall;
  const auto r = run_experiment(env, o);
  double total = 0.0;
  for (const auto& round : r.rounds) {
    EXPECT_GE(round.c_rec, 0.0);
    total += round.c_rec + round.c_cre + round.c_exc;
  }
  const auto t = r.totals();
  EXPECT_NEAR(t.total(), total, 1e-9 * total);
}

TEST(RunExperiment, DeterministicWithoutWallClock) {
  const auto env = make_environment(small_scenario());
  const auto a = run_experiment(env, quiet_options());
  const auto b = run_experiment(env, quiet_options());
  ASSERT_EQ(a.rounds.size(), b.rounds.size());
  for (std::size_t i = 0; i < a.rounds.size(); ++i) {
    EXPECT_EQ(a.rounds[i].c_exc, b.rounds[i].c_exc);
    EXPECT_EQ(a.rounds[i].reward, b.rounds[i].reward);
    EXPECT_EQ(a.rounds[i].configuration, b.rounds[i].configuration);
  }
}

TEST(RunExperiment, BeatsNoIndexAndStaysInBudget) {
  const auto env = make_environment(small_scenario());
  const auto r = run_experiment(env, quiet_options());
  const auto none = run_baseline_noindex(env);
  EXPECT_LT(r.totals().total(), none.totals().total());
  const auto pool = full_arm_pool(env.schema, env.workload, 3);
  for (const auto& round : r.rounds) {
    double size = 0.0;
    for (const auto& id : round.configuration) {
      for (const auto& arm : pool) {
        if (arm.arm_id == id) size += arm.estimated_size;
      }
    }
    EXPECT_LE(size, env.budget);
  }
}

TEST(RunExperiment, ForgetsOnlyWhenTemplatesAreNew) {
  // Groups alternate every 10 rounds; only the first switch brings templates
  // the store has never seen.
  const auto env = make_environment(small_scenario(Regime::kShifting, 40));
  const auto r = run_experiment(env, quiet_options());
  EXPECT_EQ(r.forget_rounds, (std::vector<std::uint32_t>{12}));
  for (const auto& round : r.rounds) EXPECT_EQ(round.forgot, round.round == 12);
}

TEST(Baselines, NoIndexHasNoCreationAndDominatesIndexedPlans) {
  const auto env = make_environment(small_scenario());
  const auto none = run_baseline_noindex(env);
  EXPECT_EQ(none.totals().creation, 0.0);
  EXPECT_EQ(none.totals().recommendation, 0.0);
  double exc = 0.0;
  for (const auto& r : none.rounds) exc += r.c_exc;
  EXPECT_DOUBLE_EQ(none.totals().total(), exc);

  const auto pool = full_arm_pool(env.schema, env.workload, 3);
  CostModel quiet = env.cost;
  quiet.noise_sigma = 0.0;
  Simulator sim(env.schema, quiet);
  for (const auto& round : env.workload) {
    EXPECT_LE(sim.execution_time(round, pool), sim.execution_time(round, {}));
  }
}

TEST(BruteForce, EmptyWhenNothingHelps) {
  auto s = small_scenario();
  s.tuning.budget = BudgetSpec{1.0, false};  // one byte
  const auto env = make_environment(s);
  const auto best = brute_force_optimum(env, 3);
  EXPECT_TRUE(best.configuration.empty());
  EXPECT_EQ(best.creation_time, 0.0);
}

TEST(BruteForce, PicksSingleDominantCoveringIndex) {
  Scenario s;
  const auto t = s.schema.add_table("t", 5'000'000);
  const auto a = s.schema.add_column(t, "a", 8, 1000);
  const auto b = s.schema.add_column(t, "b", 8, 1000);
  s.schema.add_column(t, "pad", 100, 1000);
  // 100k base-table lookups per query outweigh the extra creation time of the
  // covering variant.
  QueryTemplateSpec q{"q", {{t, {{a, 0.02, 0.02}}, {b}}}};
  s.workload.templates = {q};
  s.workload.rounds = 10;
  s.tuning.budget = BudgetSpec{5'000'000.0 * 24, false};  // room for exactly one
  const auto env = make_environment(s);
  const auto best = brute_force_optimum(env, 3);
  ASSERT_EQ(best.configuration.size(), 1u);
  EXPECT_EQ(best.configuration[0].arm_id, "t(a)+(b)");
}

TEST(BruteForce, NoSampledFeasibleSubsetDoesBetter) {
  const auto env = make_environment(small_scenario());
  const auto pool = full_arm_pool(env.schema, env.workload, 3);
  const auto best = brute_force_optimum(env.schema, env.cost, env.workload, pool, env.budget);
  CostModel quiet = env.cost;
  quiet.noise_sigma = 0.0;
  Simulator sim(env.schema, quiet);
  auto objective = [&](const std::vector<IndexArm>& config) {
    double total = 0.0;
    for (const auto& round : env.workload) total += sim.execution_time(round, config);
    for (const auto& arm : config) total += sim.creation_time(arm);
    return total;
  };
  EXPECT_NEAR(objective(best.configuration), best.objective(), 1e-9 * best.objective());
  Rng rng(1);
  for (int i = 0; i < 300; ++i) {
    std::vector<IndexArm> subset;
    double size = 0.0;
    for (const auto& arm : pool) {
      if (rng.uniform() < 0.4 && size + arm.estimated_size <= env.budget) {
        subset.push_back(arm);
        size += arm.estimated_size;
      }
    }
    EXPECT_GE(objective(subset), best.objective() - 1e-9);
  }
}

TEST(BruteForce, RefusesOversizedPool) {
  const auto env = make_environment(small_scenario());
  const auto pool = full_arm_pool(env.schema, env.workload, 3);
  ASSERT_GT(pool.size(), 2u);
  EXPECT_THROW(brute_force_optimum(env.schema, env.cost, env.workload, pool, env.budget, 2),
               std::length_error);
}

TEST(RegretSeries, FixedOptimumHasZeroRegretAtAlphaOne) {
  const auto env = make_environment(small_scenario());
  const auto best = brute_force_optimum(env, 3);
  const auto fixed = run_fixed_configuration(env, best.configuration);
  const auto s = regret_series(fixed, best, 1.0);
  for (double r : s.instantaneous) EXPECT_NEAR(r, 0.0, 1e-12);
  EXPECT_EQ(fixed.rounds[0].c_cre > 0.0, !best.configuration.empty());
}

TEST(RegretSeries, PrefixSumAndAlphaScaling) {
  const auto env = make_environment(small_scenario());
  const auto best = brute_force_optimum(env, 3);
  auto report = run_experiment(env, quiet_options());
  const auto one = regret_series(report, best, 1.0);
  const double alpha = 1.0 - std::exp(-1.0);
  const auto a = regret_series(report, best, alpha);
  double running = 0.0;
  for (std::size_t t = 0; t < report.rounds.size(); ++t) {
    running += a.instantaneous[t];
    EXPECT_DOUBLE_EQ(a.cumulative[t], running);
    EXPECT_NEAR(one.instantaneous[t] - a.instantaneous[t], (1.0 - alpha) * best.round_reward[t],
                1e-9);
  }
  attach_regret(report, best, alpha);
  EXPECT_EQ(report.rounds.back().regret, a.instantaneous.back());
  report.rounds.pop_back();
  EXPECT_THROW(regret_series(report, best, 1.0), std::invalid_argument);
}
