#pragma once

#include <ostream>
#include <span>
#include <string>

#include "indextune/harness.hpp"

namespace indextune {

/// round,c_rec_s,c_cre_s,c_exc_s,reward_s,regret_s,config_ids. regret_s is
/// empty when no baseline was attached; config_ids are ';'-joined.
void write_rounds_csv(std::ostream& out, const ExperimentReport& report);

/// {"methods":[{"method","recommendation_s","creation_s","execution_s","total_s",
/// "rounds"}...]} plus any extra fields in `extra` (a JSON object, may be empty).
void write_summary_json(std::ostream& out, std::span<const ExperimentReport> reports,
                        const std::string& extra_json = "{}");

struct BreakdownRow {
  std::string label;
  TimeBreakdown times;
};

void write_breakdown_csv(std::ostream& out, std::span<const BreakdownRow> rows);
/// Column-aligned text rendering of the same table.
void write_breakdown_text(std::ostream& out, std::span<const BreakdownRow> rows);

/// Double-quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(const std::string& text);

}  // namespace indextune
