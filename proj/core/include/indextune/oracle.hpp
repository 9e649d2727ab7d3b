#pragma once

#include <map>
#include <span>
#include <vector>

#include "indextune/schema.hpp"

namespace indextune {

struct SelectionCandidate {
  ArmId arm_id;
  double score = 0.0;        // UCB value
  double memory_cost = 0.0;  // bytes
  TableId table{};
  std::vector<ColumnId> key_columns;
  std::vector<TemplateId> covering_for;      // templates this index fully covers
  std::vector<TemplateId> source_templates;  // templates the arm was generated from
};

struct SuperArm {
  std::vector<ArmId> arm_ids;  // sorted
  double total_cost = 0.0;

  bool contains(const ArmId& id) const;
};

enum class GreedyCriterion {
  score,    // highest raw score first
  density,  // highest score per byte first
  best_of,  // run both passes, keep the higher-valued super arm
};

struct OracleOptions {
  GreedyCriterion criterion = GreedyCriterion::best_of;
};

/// True if `prefix` is a (not necessarily proper) prefix of `key`.
bool is_key_prefix(std::span<const ColumnId> prefix, std::span<const ColumnId> key);

/// Greedy knapsack oracle with the index-tuning filters: negative scores are
/// pruned up front, then pick/filter alternate until nothing feasible is left.
/// After each pick the remaining candidates lose every arm that no longer fits
/// the remaining budget, every arm in a key-prefix relation with a selected
/// arm, and, when the pick covers a template q, every arm generated only for
/// q. Ties go to the lexicographically smaller arm id.
SuperArm select_super_arm(std::span<const SelectionCandidate> candidates, double budget,
                          const OracleOptions& options = {});

/// g(s) = sum of member scores. Throws std::invalid_argument on a member
/// without a score.
double super_arm_value(const std::map<ArmId, double>& scores, const SuperArm& super_arm);

}  // namespace indextune
