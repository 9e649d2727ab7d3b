#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "indextune/query_store.hpp"
#include "indextune/schema.hpp"

namespace indextune {

struct IndexArm {
  ArmId arm_id;
  TableId table{};
  std::vector<ColumnId> key_columns;      // ordered
  std::vector<ColumnId> payload_columns;  // sorted, disjoint from key_columns
  std::set<TemplateId> source_templates;
  double estimated_size = 0.0;  // bytes
};

/// `table(k1,k2)` or `table(k1,k2)+(p1,p2)`, built from names so the id of an
/// index is the same in every round.
ArmId make_arm_id(const Schema& schema, TableId table, std::span<const ColumnId> key,
                  std::span<const ColumnId> payload);

/// rows * (key widths + payload widths + 8-byte row pointer).
double estimate_index_size(const Schema& schema, TableId table, std::span<const ColumnId> key,
                           std::span<const ColumnId> payload);

IndexArm make_arm(const Schema& schema, TableId table, std::vector<ColumnId> key,
                  std::vector<ColumnId> payload);

/// Candidate indices from templates: every permutation of every non-empty
/// predicate subset up to `max_key_width` columns, plus a covering variant
/// (payload = template payload minus predicates) of each full-width
/// permutation. Arms are merged by id, their source templates unioned, and
/// returned sorted by id.
std::vector<IndexArm> generate_arms(const Schema& schema,
                                    std::span<const QueryTemplateInfo> templates,
                                    std::size_t max_key_width);

/// Column slots (one per schema column) followed by is_covering, size_ratio
/// and usage_stat.
std::size_t context_dimension(const Schema& schema);

struct ContextVector {
  Eigen::VectorXd values;
};

struct ContextInputs {
  const Schema* schema = nullptr;
  /// Templates the arm may have been generated from; used for is_covering.
  std::span<const QueryTemplateInfo> templates;
  /// Workload predicate columns; key columns outside this set get slot 0.
  std::set<ColumnId> template_predicates;
  const std::set<ArmId>* materialised = nullptr;
  const std::map<ArmId, double>* usage_history = nullptr;
  double db_size = 1.0;
};

ContextVector build_context(const IndexArm& arm, const ContextInputs& inputs);

/// Exponentially decayed count of rounds in which each arm was used by the
/// optimiser: u <- decay * u + [used this round].
class UsageTracker {
 public:
  explicit UsageTracker(double decay = 0.5) : decay_(decay) {}

  void observe_round(const std::set<ArmId>& used);
  const std::map<ArmId, double>& history() const { return usage_; }

 private:
  double decay_;
  std::map<ArmId, double> usage_;
};

}  // namespace indextune
