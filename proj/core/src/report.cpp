#include "indextune/report.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>
#include <json.hpp>

namespace indextune {

namespace {

std::string seconds(double v) { return fmt::format("{:.9f}", v); }

}  // namespace

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_rounds_csv(std::ostream& out, const ExperimentReport& report) {
  out << "round,c_rec_s,c_cre_s,c_exc_s,reward_s,regret_s,config_ids\n";
  for (const auto& r : report.rounds) {
    fmt::print(out, "{},{},{},{},{},{},{}\n", r.round, seconds(r.c_rec), seconds(r.c_cre),
               seconds(r.c_exc), seconds(r.reward), r.regret ? seconds(*r.regret) : "",
               csv_field(fmt::format("{}", fmt::join(r.configuration, ";"))));
  }
}

void write_summary_json(std::ostream& out, std::span<const ExperimentReport> reports,
                        const std::string& extra_json) {
  nlohmann::ordered_json root = nlohmann::ordered_json::parse(extra_json);
  nlohmann::ordered_json methods = nlohmann::ordered_json::array();
  for (const auto& report : reports) {
    const auto t = report.totals();
    nlohmann::ordered_json m;
    m["method"] = report.method;
    m["recommendation_s"] = t.recommendation;
    m["creation_s"] = t.creation;
    m["execution_s"] = t.execution;
    m["total_s"] = t.total();
    m["rounds"] = report.rounds.size();
    m["forget_rounds"] = report.forget_rounds;
    methods.push_back(std::move(m));
  }
  root["methods"] = std::move(methods);
  out << root.dump(2) << '\n';
}

void write_breakdown_csv(std::ostream& out, std::span<const BreakdownRow> rows) {
  out << "run,recommendation_s,creation_s,execution_s,total_s\n";
  for (const auto& r : rows) {
    fmt::print(out, "{},{},{},{},{}\n", csv_field(r.label), seconds(r.times.recommendation),
               seconds(r.times.creation), seconds(r.times.execution), seconds(r.times.total()));
  }
}

void write_breakdown_text(std::ostream& out, std::span<const BreakdownRow> rows) {
  std::size_t label_width = 3;
  for (const auto& r : rows) label_width = std::max(label_width, r.label.size());
  fmt::print(out, "{:<{}}  {:>14}  {:>12}  {:>12}  {:>12}\n", "run", label_width,
             "Recommendation", "Creation", "Execution", "Total");
  for (const auto& r : rows) {
    fmt::print(out, "{:<{}}  {:>14.3f}  {:>12.3f}  {:>12.3f}  {:>12.3f}\n", r.label,
               label_width, r.times.recommendation, r.times.creation, r.times.execution,
               r.times.total());
  }
}

}  // namespace indextune
