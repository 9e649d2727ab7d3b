#pragma once

// Deterministic stand-in for a DBMS: builds index configurations, "runs"
// query instances through a cost-truthful access-path chooser and reports the
// execution statistics a real engine would expose.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "indextune/arms.hpp"
#include "indextune/query.hpp"
#include "indextune/random.hpp"
#include "indextune/reward.hpp"
#include "indextune/schema.hpp"

namespace indextune {

struct CostModel {
  double seq_read_rate = 200e6;       // bytes / second
  double index_seek_overhead = 5e-3;  // seconds per index access
  double lookup_cost_per_row = 2e-6;  // seconds per base-table lookup
  double creation_rate = 50e6;        // bytes / second
  double noise_sigma = 0.1;           // multiplicative noise in [1 - sigma, 1 + sigma]
  std::uint64_t rng_seed = 0;

  /// Throws std::invalid_argument on a non-positive rate or sigma outside [0, 1).
  void validate() const;
};

struct MaterialiseResult {
  std::map<ArmId, double> creation_times;
  std::vector<ArmId> dropped;
};

/// An index serves a table access when its leading key column is one of the
/// access's predicate columns.
bool is_applicable(const IndexArm& arm, const TableAccessSpec& access);

/// Key and payload together hold every column the access needs.
bool is_covering(const IndexArm& arm, const TableAccessSpec& access);

class Simulator {
 public:
  Simulator(Schema schema, CostModel cost);

  const Schema& schema() const { return schema_; }
  const CostModel& cost_model() const { return cost_; }

  /// Builds the arms of `config` missing from `current`; arms only in
  /// `current` are dropped for free. Throws std::invalid_argument when the
  /// configuration exceeds `budget` bytes.
  MaterialiseResult materialise(std::span<const IndexArm> config, const std::set<ArmId>& current,
                                double budget);

  RoundOutcome execute(std::span<const QueryInstance> workload, std::span<const IndexArm> config);

  // Noise-free cost primitives.
  double full_scan_time(const TableAccessSpec& access) const;
  /// nullopt when the index is not applicable to the access.
  std::optional<double> index_access_time(const TableAccessSpec& access,
                                          const IndexArm& arm) const;
  double creation_time(const IndexArm& arm) const;
  /// Cheapest path for one access: full scan or an applicable index.
  double best_access_time(const TableAccessSpec& access, std::span<const IndexArm> config) const;
  double execution_time(std::span<const QueryInstance> workload,
                        std::span<const IndexArm> config) const;

 private:
  double noise();

  Schema schema_;
  CostModel cost_;
  Rng rng_;
};

}  // namespace indextune
