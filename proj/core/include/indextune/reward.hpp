#pragma once

// Reward shaping: per-arm time gain observed from execution statistics, minus
// the arm's creation time in the round it was built.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "indextune/schema.hpp"

namespace indextune {

struct TableAccessRecord {
  TableId table{};
  std::optional<ArmId> index;  // nullopt: full table scan
  double seconds = 0.0;
};

struct QueryExecution {
  TemplateId template_id;
  double elapsed = 0.0;
  std::vector<TableAccessRecord> accesses;
  std::set<ArmId> used_indices;
};

struct RoundOutcome {
  std::vector<QueryExecution> queries;
  std::map<ArmId, double> creation_times;  // arms built this round
  std::vector<ArmId> configuration;        // s_t, sorted

  double execution_time() const;
  double creation_time() const;
};

/// Most recent full-scan time per (table, template), carried across rounds.
/// A query that runs through an index never shows a full scan in that round,
/// so its reference comes from the last round that did scan.
class ScanReferenceCache {
 public:
  void record(const RoundOutcome& outcome);
  std::optional<double> lookup(TableId table, const TemplateId& template_id) const;
  std::size_t size() const { return scans_.size(); }

 private:
  std::map<std::pair<TableId, TemplateId>, double> scans_;
};

/// Full-scan time of `table` for query `query_index` in this round if one was
/// observed, otherwise the slowest secondary-index access on that table.
/// Throws std::invalid_argument if the query never touched the table.
double table_scan_reference(const RoundOutcome& outcome, TableId table, std::size_t query_index);

/// Same, but a cached full scan from an earlier round wins over the index
/// fallback.
double table_scan_reference(const RoundOutcome& outcome, TableId table, std::size_t query_index,
                            const ScanReferenceCache& cache);

/// Sum over queries that used `arm` of (reference scan time - arm's own access
/// time). Zero when unused; negative on a regression.
double arm_gain(const RoundOutcome& outcome, const ArmId& arm, TableId table,
                const ScanReferenceCache* cache = nullptr);

/// Gain over a subset of the round's queries.
double arm_gain(const RoundOutcome& outcome, const ArmId& arm, TableId table,
                std::span<const std::size_t> query_indices,
                const ScanReferenceCache* cache = nullptr);

/// Gain minus creation time (creation counts only if built this round).
double arm_reward(const RoundOutcome& outcome, const ArmId& arm, TableId table,
                  const ScanReferenceCache* cache = nullptr);

struct ArmRef {
  ArmId arm_id;
  TableId table{};
};

double super_arm_reward(const RoundOutcome& outcome, std::span<const ArmRef> members,
                        const ScanReferenceCache* cache = nullptr);

}  // namespace indextune
