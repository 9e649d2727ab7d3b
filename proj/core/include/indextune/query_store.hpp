#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "indextune/query.hpp"

namespace indextune {

struct TemplateTableColumns {
  TableId table{};
  std::vector<ColumnId> predicates;  // sorted, unique
  std::vector<ColumnId> payload;     // sorted, unique
};

struct QueryTemplateInfo {
  TemplateId template_id;  // normalised signature
  std::string label;       // name of the first instance seen
  std::vector<TemplateTableColumns> tables;
  std::uint64_t frequency = 0;
  double avg_selectivity = 1.0;
  std::uint32_t first_seen = 0;
  std::uint32_t last_seen = 0;

  const TemplateTableColumns* on_table(TableId table) const;
};

/// Builds the structural part of a template (no statistics) from an instance.
QueryTemplateInfo describe_template(const QueryInstance& query);

/// Tracks query templates across rounds, answers the queries of interest and
/// measures how much of each round is new.
class QueryStore {
 public:
  explicit QueryStore(std::uint32_t qoi_window = 4);

  /// Adds or updates the templates of one executed round and returns the
  /// fraction of the round's distinct templates never seen before.
  /// Re-ingesting the most recent round replaces its earlier contribution;
  /// going back further throws std::invalid_argument.
  double ingest(std::uint32_t round, std::span<const QueryInstance> executed);

  /// Templates whose last_seen lies within the `window` most recent rounds
  /// ending at `round`, i.e. round - last_seen < window. Ordered by id.
  std::vector<QueryTemplateInfo> queries_of_interest(std::uint32_t round) const;

  const std::map<TemplateId, QueryTemplateInfo>& templates() const { return templates_; }
  bool empty() const { return templates_.empty(); }
  std::uint32_t window() const { return window_; }

 private:
  struct Snapshot {
    std::uint32_t round;
    std::map<TemplateId, QueryTemplateInfo> templates;
  };

  std::uint32_t window_;
  std::map<TemplateId, QueryTemplateInfo> templates_;
  std::optional<Snapshot> before_last_;
};

}  // namespace indextune
