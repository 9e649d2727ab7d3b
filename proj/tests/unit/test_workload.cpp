#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "indextune/workload.hpp"

using namespace indextune;

namespace {

WorkloadSpec pool(std::size_t n) {
  WorkloadSpec spec;
  for (std::size_t i = 0; i < n; ++i) {
    QueryTemplateSpec t;
    t.name = "q" + std::to_string(i);
    TableAccessTemplate a;
    a.table = TableId{0};
    a.predicates.push_back({static_cast<ColumnId>(i), 0.01, 0.02});
    t.accesses.push_back(a);
    spec.templates.push_back(t);
  }
  return spec;
}

}  // namespace

TEST(Regime, RoundTripsThroughText) {
  for (auto r : {Regime::kStatic, Regime::kShifting, Regime::kRandom}) {
    EXPECT_EQ(parse_regime(to_string(r)), r);
  }
  EXPECT_FALSE(parse_regime("bogus").has_value());
}

TEST(GenerateWorkload, StaticRunsEveryTemplateEachRound) {
  auto spec = pool(5);
  spec.rounds = 7;
  const auto w = generate_workload(Regime::kStatic, spec, 1);
  ASSERT_EQ(w.size(), 7u);
  for (const auto& round : w) {
    ASSERT_EQ(round.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_EQ(round[i].template_name, "q" + std::to_string(i));
      const double s = round[i].accesses[0].predicates[0].selectivity;
      EXPECT_GE(s, 0.01);
      EXPECT_LE(s, 0.02);
    }
  }
}

TEST(GenerateWorkload, ShiftingUsesDisjointGroupsInTurn) {
  auto spec = pool(16);
  spec.rounds = 80;
  const auto groups = shifting_groups(spec, 3);
  ASSERT_EQ(groups.size(), 4u);
  std::set<std::size_t> all;
  for (const auto& g : groups) {
    EXPECT_EQ(g.size(), 4u);
    all.insert(g.begin(), g.end());
  }
  EXPECT_EQ(all.size(), 16u);

  const auto w = generate_workload(Regime::kShifting, spec, 3);
  ASSERT_EQ(w.size(), 80u);
  for (std::size_t r = 0; r < 80; ++r) {
    const auto& g = groups[r / 20];
    ASSERT_EQ(w[r].size(), g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_EQ(w[r][i].template_name, spec.templates[g[i]].name);
    }
  }
  spec.groups = 17;
  EXPECT_THROW(generate_workload(Regime::kShifting, spec, 3), std::invalid_argument);
}

TEST(GenerateWorkload, RandomRoundSizeTargetsHalfRepeat) {
  EXPECT_EQ(random_round_size(1), 1u);
  EXPECT_EQ(random_round_size(2), 1u);
  EXPECT_EQ(random_round_size(24), 16u);
  for (std::size_t n : {4u, 10u, 24u, 50u}) {
    const double p = 1.0 - std::pow(1.0 - 1.0 / static_cast<double>(n),
                                    static_cast<double>(random_round_size(n)));
    EXPECT_NEAR(p, 0.5, 0.1) << n;
  }
}

TEST(GenerateWorkload, RandomIsSeededAndSized) {
  auto spec = pool(24);
  spec.rounds = 25;
  const auto a = generate_workload(Regime::kRandom, spec, 9);
  const auto b = generate_workload(Regime::kRandom, spec, 9);
  const auto c = generate_workload(Regime::kRandom, spec, 10);
  ASSERT_EQ(a.size(), 25u);
  EXPECT_EQ(a[0].size(), 16u);
  bool same = true, differs = false;
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t i = 0; i < a[r].size(); ++i) {
      same = same && a[r][i].template_name == b[r][i].template_name;
      differs = differs || a[r][i].template_name != c[r][i].template_name;
    }
  }
  EXPECT_TRUE(same);
  EXPECT_TRUE(differs);
  spec.queries_per_round = 3;
  EXPECT_EQ(generate_workload(Regime::kRandom, spec, 9)[0].size(), 3u);
}

TEST(RoundRepeatRate, HandWorked) {
  auto spec = pool(3);
  auto mk = [&](std::vector<std::size_t> ids) {
    RoundWorkload r;
    for (auto i : ids) {
      QueryInstance q;
      q.template_name = spec.templates[i].name;
      TableAccessSpec a;
      a.table = TableId{0};
      a.predicates.push_back({static_cast<ColumnId>(i), 0.1});
      q.accesses.push_back(a);
      r.push_back(q);
    }
    return r;
  };
  // Round 2: 1 of 2 repeats; round 3: 2 of 2 repeat.
  const Workload w{mk({0, 1}), mk({1, 2}), mk({2, 2})};
  EXPECT_DOUBLE_EQ(round_repeat_rate(w), (0.5 + 1.0) / 2.0);
  EXPECT_EQ(round_repeat_rate(Workload{mk({0})}), 0.0);
  EXPECT_THROW(generate_workload(Regime::kStatic, WorkloadSpec{}, 1), std::invalid_argument);
}
