#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "indextune/report.hpp"

using namespace indextune;

namespace {

ExperimentReport sample() {
  ExperimentReport r;
  r.method = "MAB";
  RoundRecord a;
  a.round = 1;
  a.c_exc = 2.5;
  RoundRecord b;
  b.round = 2;
  b.c_rec = 0.001;
  b.c_cre = 1.0;
  b.c_exc = 0.5;
  b.reward = 1.25;
  b.regret = -0.5;
  b.configuration = {"t(a)", "t(b,c)+(d)"};
  r.rounds = {a, b};
  return r;
}

}  // namespace

TEST(CsvField, QuotesOnlyWhenNeeded) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(RoundsCsv, HeaderAndRows) {
  std::ostringstream out;
  write_rounds_csv(out, sample());
  EXPECT_EQ(out.str(),
            "round,c_rec_s,c_cre_s,c_exc_s,reward_s,regret_s,config_ids\n"
            "1,0.000000000,0.000000000,2.500000000,0.000000000,,\n"
            "2,0.001000000,1.000000000,0.500000000,1.250000000,-0.500000000,"
            "\"t(a);t(b,c)+(d)\"\n");
}

TEST(SummaryJson, TotalsPerMethod) {
  std::ostringstream out;
  const std::vector<ExperimentReport> reports{sample()};
  write_summary_json(out, reports, R"({"scenario":"x"})");
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["scenario"], "x");
  const auto& m = j["methods"][0];
  EXPECT_EQ(m["method"], "MAB");
  EXPECT_DOUBLE_EQ(m["recommendation_s"].get<double>(), 0.001);
  EXPECT_DOUBLE_EQ(m["creation_s"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(m["execution_s"].get<double>(), 3.0);
  EXPECT_DOUBLE_EQ(m["total_s"].get<double>(), 4.001);
}

TEST(Breakdown, CsvAndAlignedText) {
  const std::vector<BreakdownRow> rows{{"MAB", {0.5, 1.0, 2.0}}, {"NoIndex", {0.0, 0.0, 9.0}}};
  std::ostringstream csv, text;
  write_breakdown_csv(csv, rows);
  write_breakdown_text(text, rows);
  EXPECT_EQ(csv.str(),
            "run,recommendation_s,creation_s,execution_s,total_s\n"
            "MAB,0.500000000,1.000000000,2.000000000,3.500000000\n"
            "NoIndex,0.000000000,0.000000000,9.000000000,9.000000000\n");
  std::istringstream lines(text.str());
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(header.size(), first.size());
  EXPECT_EQ(first.size(), second.size());
  EXPECT_NE(second.find("9.000"), std::string::npos);
}
