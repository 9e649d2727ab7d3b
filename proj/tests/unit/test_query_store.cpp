#include <gtest/gtest.h>

#include "indextune/query_store.hpp"

using namespace indextune;

namespace {

QueryInstance query(std::string name, std::uint32_t table, std::vector<std::uint32_t> preds,
                    double sel, std::vector<std::uint32_t> payload = {}) {
  QueryInstance q;
  q.template_name = std::move(name);
  TableAccessSpec a;
  a.table = static_cast<TableId>(table);
  for (auto p : preds) a.predicates.push_back({static_cast<ColumnId>(p), sel});
  for (auto p : payload) a.payload.push_back(static_cast<ColumnId>(p));
  q.accesses.push_back(a);
  return q;
}

}  // namespace

TEST(TemplateSignature, IgnoresParameterValuesAndOrder) {
  auto a = query("a", 0, {3, 1}, 0.1, {5});
  auto b = query("b", 0, {1, 3}, 0.7, {5});
  EXPECT_EQ(template_signature(a), template_signature(b));
  EXPECT_EQ(template_signature(a), "t0:1,3|5");
  auto c = query("c", 0, {1}, 0.1, {5});
  EXPECT_NE(template_signature(a), template_signature(c));
}

TEST(DescribeTemplate, GroupsColumnsPerTable) {
  auto q = query("x", 1, {4, 2}, 0.1, {7, 7});
  const auto info = describe_template(q);
  ASSERT_EQ(info.tables.size(), 1u);
  EXPECT_EQ(info.tables[0].predicates, (std::vector<ColumnId>{ColumnId{2}, ColumnId{4}}));
  EXPECT_EQ(info.tables[0].payload, (std::vector<ColumnId>{ColumnId{7}}));
  EXPECT_EQ(info.label, "x");
  EXPECT_NE(info.on_table(TableId{1}), nullptr);
  EXPECT_EQ(info.on_table(TableId{0}), nullptr);
}

TEST(QueryStore, IngestReportsShareOfNewTemplates) {
  QueryStore store;
  std::vector<QueryInstance> r1{query("a", 0, {1}, 0.1), query("b", 0, {2}, 0.1)};
  EXPECT_DOUBLE_EQ(store.ingest(1, r1), 1.0);
  std::vector<QueryInstance> r2{query("a", 0, {1}, 0.3), query("c", 0, {3}, 0.1)};
  EXPECT_DOUBLE_EQ(store.ingest(2, r2), 0.5);
  EXPECT_DOUBLE_EQ(store.ingest(3, r2), 0.0);
  EXPECT_DOUBLE_EQ(store.ingest(4, {}), 0.0);
}

TEST(QueryStore, StatisticsAccumulate) {
  QueryStore store;
  std::vector<QueryInstance> r1{query("a", 0, {1}, 0.1), query("a", 0, {1}, 0.3)};
  store.ingest(1, r1);
  std::vector<QueryInstance> r2{query("a", 0, {1}, 0.5)};
  store.ingest(2, r2);
  const auto& info = store.templates().begin()->second;
  EXPECT_EQ(info.frequency, 3u);
  EXPECT_NEAR(info.avg_selectivity, 0.3, 1e-15);
  EXPECT_EQ(info.first_seen, 1u);
  EXPECT_EQ(info.last_seen, 2u);
}

TEST(QueryStore, ReingestingARoundReplacesIt) {
  QueryStore store;
  std::vector<QueryInstance> r1{query("a", 0, {1}, 0.1)};
  store.ingest(1, r1);
  std::vector<QueryInstance> r2{query("b", 0, {2}, 0.1)};
  store.ingest(2, r2);
  std::vector<QueryInstance> r2b{query("a", 0, {1}, 0.2)};
  EXPECT_DOUBLE_EQ(store.ingest(2, r2b), 0.0);
  EXPECT_EQ(store.templates().size(), 1u);
  EXPECT_EQ(store.templates().begin()->second.frequency, 2u);
  EXPECT_THROW(store.ingest(1, r1), std::invalid_argument);
}

TEST(QueryStore, QueriesOfInterestUseWindow) {
  QueryStore store(2);
  std::vector<QueryInstance> r1{query("a", 0, {1}, 0.1)};
  std::vector<QueryInstance> r2{query("b", 0, {2}, 0.1)};
  store.ingest(1, r1);
  store.ingest(2, r2);
  EXPECT_EQ(store.queries_of_interest(2).size(), 2u);
  EXPECT_EQ(store.queries_of_interest(3).size(), 1u);
  EXPECT_EQ(store.queries_of_interest(4).size(), 0u);
  EXPECT_EQ(store.queries_of_interest(1).size(), 1u);
  EXPECT_THROW(QueryStore(0), std::invalid_argument);
}
