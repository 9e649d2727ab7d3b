#include "indextune/reward.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace indextune {

double RoundOutcome::execution_time() const {
  double total = 0.0;
  for (const auto& q : queries) total += q.elapsed;
  return total;
}

double RoundOutcome::creation_time() const {
  double total = 0.0;
  for (const auto& [id, seconds] : creation_times) total += seconds;
  return total;
}

void ScanReferenceCache::record(const RoundOutcome& outcome) {
  for (const auto& q : outcome.queries) {
    for (const auto& access : q.accesses) {
      if (!access.index) scans_[{access.table, q.template_id}] = access.seconds;
    }
  }
}

std::optional<double> ScanReferenceCache::lookup(TableId table,
                                                 const TemplateId& template_id) const {
  auto it = scans_.find({table, template_id});
  if (it == scans_.end()) return std::nullopt;
  return it->second;
}

namespace {

struct Observed {
  std::optional<double> full_scan;
  std::optional<double> slowest_index;
};

Observed observe(const RoundOutcome& outcome, TableId table, std::size_t query_index) {
  if (query_index >= outcome.queries.size()) {
    throw std::invalid_argument(fmt::format("query {} not in round", query_index));
  }
  Observed seen;
  bool touched = false;
  for (const auto& access : outcome.queries[query_index].accesses) {
    if (access.table != table) continue;
    touched = true;
    if (!access.index) {
      seen.full_scan = std::max(seen.full_scan.value_or(access.seconds), access.seconds);
    } else {
      seen.slowest_index = std::max(seen.slowest_index.value_or(access.seconds), access.seconds);
    }
  }
  if (!touched) {
    throw std::invalid_argument(
        fmt::format("query {} did not touch table {}", query_index, index_of(table)));
  }
  return seen;
}

double reference(const RoundOutcome& outcome, TableId table, std::size_t query_index,
                 const ScanReferenceCache* cache) {
  const auto seen = observe(outcome, table, query_index);
  if (seen.full_scan) return *seen.full_scan;
  if (cache != nullptr) {
    if (auto cached = cache->lookup(table, outcome.queries[query_index].template_id)) {
      return *cached;
    }
  }
  return *seen.slowest_index;
}

double gain_for_query(const RoundOutcome& outcome, const ArmId& arm, TableId table,
                      std::size_t q, const ScanReferenceCache* cache) {
  const auto& query = outcome.queries.at(q);
  if (!query.used_indices.contains(arm)) return 0.0;
  // One access path per table in the simulator; if a plan ever reads the same
  // table twice through this index, each read is credited.
  double gain = 0.0;
  bool found = false;
  for (const auto& access : query.accesses) {
    if (access.table == table && access.index && *access.index == arm) {
      gain += reference(outcome, table, q, cache) - access.seconds;
      found = true;
    }
  }
  if (!found) {
    throw std::invalid_argument(
        fmt::format("index {} listed as used but has no access record on its table", arm));
  }
  return gain;
}

}  // namespace

double table_scan_reference(const RoundOutcome& outcome, TableId table, std::size_t query_index) {
  return reference(outcome, table, query_index, nullptr);
}

double table_scan_reference(const RoundOutcome& outcome, TableId table, std::size_t query_index,
                            const ScanReferenceCache& cache) {
  return reference(outcome, table, query_index, &cache);
}

double arm_gain(const RoundOutcome& outcome, const ArmId& arm, TableId table,
                const ScanReferenceCache* cache) {
  double total = 0.0;
  for (std::size_t q = 0; q < outcome.queries.size(); ++q) {
    total += gain_for_query(outcome, arm, table, q, cache);
  }
  return total;
}

double arm_gain(const RoundOutcome& outcome, const ArmId& arm, TableId table,
                std::span<const std::size_t> query_indices, const ScanReferenceCache* cache) {
  double total = 0.0;
  for (std::size_t q : query_indices) total += gain_for_query(outcome, arm, table, q, cache);
  return total;
}

double arm_reward(const RoundOutcome& outcome, const ArmId& arm, TableId table,
                  const ScanReferenceCache* cache) {
  double creation = 0.0;
  if (auto it = outcome.creation_times.find(arm); it != outcome.creation_times.end()) {
    creation = it->second;
  }
  return arm_gain(outcome, arm, table, cache) - creation;
}

double super_arm_reward(const RoundOutcome& outcome, std::span<const ArmRef> members,
                        const ScanReferenceCache* cache) {
  double total = 0.0;
  for (const auto& m : members) total += arm_reward(outcome, m.arm_id, m.table, cache);
  return total;
}

}  // namespace indextune
