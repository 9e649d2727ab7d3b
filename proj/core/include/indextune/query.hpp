#pragma once

#include <string>
#include <vector>

#include "indextune/schema.hpp"

namespace indextune {

struct PredicateInstance {
  ColumnId column{};
  double selectivity = 1.0;  // (0, 1]
};

// One table touched by a query instance: the predicate columns (filter and
// join) with their instance selectivities, and the columns it must return.
struct TableAccessSpec {
  TableId table{};
  std::vector<PredicateInstance> predicates;
  std::vector<ColumnId> payload;

  double selectivity() const;
  bool has_predicate(ColumnId c) const;
  /// Predicate and payload columns, sorted and de-duplicated.
  std::vector<ColumnId> needed_columns() const;
};

struct QueryInstance {
  std::string template_name;
  std::vector<TableAccessSpec> accesses;

  /// Product of all predicate selectivities over all tables.
  double selectivity() const;
};

using RoundWorkload = std::vector<QueryInstance>;
using Workload = std::vector<RoundWorkload>;

/// Normalised template identity: per table the sorted predicate-column set and
/// the sorted payload-column set, parameter values stripped.
TemplateId template_signature(const QueryInstance& query);

}  // namespace indextune
