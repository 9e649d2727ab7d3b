#include <gtest/gtest.h>

#include "indextune/scenario.hpp"

using namespace indextune;

namespace {

const char* kMinimal = R"({
  "name": "tiny",
  "tables": [{"name": "t", "rows": 1000,
              "columns": [{"name": "a", "width": 4}, {"name": "b", "width": 8, "distinct": 10}]}],
  "templates": [{"name": "q", "accesses": [{"table": "t",
                 "predicates": [{"column": "a", "selectivity": [0.01, 0.02]}],
                 "payload": ["b"]}]}],
  "workload": {"regime": "random", "rounds": 9, "seed": 4},
  "tuning": {"alpha": 0.5, "budget": "0.25x", "oracle": "density"}
})";

}  // namespace

TEST(BudgetSpec, ParsesMultiplierAndBytes) {
  auto m = BudgetSpec::parse("0.25x");
  EXPECT_TRUE(m.multiplier);
  EXPECT_DOUBLE_EQ(m.resolve(400.0), 100.0);
  auto b = BudgetSpec::parse("5000");
  EXPECT_FALSE(b.multiplier);
  EXPECT_DOUBLE_EQ(b.resolve(400.0), 5000.0);
  for (const char* bad : {"", "x", "-1x", "0", "1y", "abc", "1xx"}) {
    EXPECT_THROW(BudgetSpec::parse(bad), ScenarioError) << bad;
  }
}

TEST(ParseScenario, ReadsEverySection) {
  const auto s = parse_scenario(kMinimal);
  EXPECT_EQ(s.name, "tiny");
  EXPECT_EQ(s.schema.table_count(), 1u);
  EXPECT_EQ(s.schema.column_count(), 2u);
  EXPECT_EQ(s.schema.column(ColumnId{1}).distinct, 10u);
  EXPECT_EQ(s.schema.column(ColumnId{0}).distinct, 1000u);
  EXPECT_EQ(s.regime, Regime::kRandom);
  EXPECT_EQ(s.workload.rounds, 9u);
  EXPECT_EQ(s.seed, 4u);
  ASSERT_EQ(s.workload.templates.size(), 1u);
  const auto& p = s.workload.templates[0].accesses[0].predicates[0];
  EXPECT_DOUBLE_EQ(p.selectivity_lo, 0.01);
  EXPECT_DOUBLE_EQ(p.selectivity_hi, 0.02);
  EXPECT_DOUBLE_EQ(s.tuning.ucb.alpha.alpha, 0.5);
  EXPECT_TRUE(s.tuning.budget.multiplier);
  EXPECT_EQ(s.tuning.criterion, GreedyCriterion::density);
  EXPECT_DOUBLE_EQ(s.cost.seq_read_rate, CostModel{}.seq_read_rate);
}

TEST(ParseScenario, ReportsBadInput) {
  EXPECT_THROW(parse_scenario("{"), ScenarioError);
  EXPECT_THROW(parse_scenario("[]"), ScenarioError);
  EXPECT_THROW(parse_scenario(R"({"tables": []})"), ScenarioError);
  std::string unknown_col = kMinimal;
  unknown_col.replace(unknown_col.find("\"column\": \"a\""), 13, "\"column\": \"z\"");
  try {
    parse_scenario(unknown_col);
    FAIL();
  } catch (const ScenarioError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown column"), std::string::npos);
  }
  std::string bad_regime = kMinimal;
  bad_regime.replace(bad_regime.find("random"), 6, "chaos");
  EXPECT_THROW(parse_scenario(bad_regime), ScenarioError);
}

TEST(LoadScenario, MissingFileThrows) {
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ScenarioError);
}

TEST(LoadScenario, ShippedScenariosParse) {
  for (const char* name : {"static_small.json", "shifting.json", "random.json"}) {
    const auto s = load_scenario(std::string(INDEXTUNE_SCENARIO_DIR) + "/" + name);
    EXPECT_FALSE(s.workload.templates.empty()) << name;
  }
}
