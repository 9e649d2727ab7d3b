#include "indextune/simenv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace indextune {

void CostModel::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(fmt::format("cost model: {} must be > 0", name));
    }
  };
  positive(seq_read_rate, "seq_read_rate");
  positive(creation_rate, "creation_rate");
  if (!(index_seek_overhead >= 0.0)) {
    throw std::invalid_argument("cost model: index_seek_overhead must be >= 0");
  }
  if (!(lookup_cost_per_row >= 0.0)) {
    throw std::invalid_argument("cost model: lookup_cost_per_row must be >= 0");
  }
  if (!(noise_sigma >= 0.0 && noise_sigma < 1.0)) {
    throw std::invalid_argument("cost model: noise_sigma must lie in [0, 1)");
  }
}

bool is_applicable(const IndexArm& arm, const TableAccessSpec& access) {
  return arm.table == access.table && !arm.key_columns.empty() &&
         access.has_predicate(arm.key_columns.front());
}

bool is_covering(const IndexArm& arm, const TableAccessSpec& access) {
  for (ColumnId c : access.needed_columns()) {
    const bool in_key =
        std::find(arm.key_columns.begin(), arm.key_columns.end(), c) != arm.key_columns.end();
    const bool in_payload = std::binary_search(arm.payload_columns.begin(),
                                               arm.payload_columns.end(), c);
    if (!in_key && !in_payload) return false;
  }
  return true;
}

Simulator::Simulator(Schema schema, CostModel cost)
    : schema_(std::move(schema)), cost_(cost), rng_(cost.rng_seed) {
  cost_.validate();
}

double Simulator::noise() {
  if (cost_.noise_sigma == 0.0) return 1.0;
  return rng_.uniform(1.0 - cost_.noise_sigma, 1.0 + cost_.noise_sigma);
}

double Simulator::full_scan_time(const TableAccessSpec& access) const {
  const auto rows = static_cast<double>(schema_.table(access.table).row_count);
  return rows * static_cast<double>(schema_.row_width(access.table)) / cost_.seq_read_rate;
}

std::optional<double> Simulator::index_access_time(const TableAccessSpec& access,
                                                   const IndexArm& arm) const {
  if (!is_applicable(arm, access)) return std::nullopt;
  // Rows reached through the key: the leading run of key columns that carry a
  // predicate narrows the range; later predicates are applied after the fetch.
  double selectivity = 1.0;
  for (ColumnId c : arm.key_columns) {
    auto it = std::find_if(access.predicates.begin(), access.predicates.end(),
                           [c](const PredicateInstance& p) { return p.column == c; });
    if (it == access.predicates.end()) break;
    selectivity *= it->selectivity;
  }
  double entry_width = 0.0;
  for (ColumnId c : arm.key_columns) entry_width += schema_.column(c).width;
  for (ColumnId c : arm.payload_columns) entry_width += schema_.column(c).width;

  const double rows = selectivity * static_cast<double>(schema_.table(access.table).row_count);
  double seconds = cost_.index_seek_overhead + rows * entry_width / cost_.seq_read_rate;
  if (!is_covering(arm, access)) seconds += rows * cost_.lookup_cost_per_row;
  return seconds;
}

double Simulator::creation_time(const IndexArm& arm) const {
  return arm.estimated_size / cost_.creation_rate;
}

double Simulator::best_access_time(const TableAccessSpec& access,
                                   std::span<const IndexArm> config) const {
  double best = full_scan_time(access);
  for (const auto& arm : config) {
    if (auto t = index_access_time(access, arm); t && *t < best) best = *t;
  }
  return best;
}

double Simulator::execution_time(std::span<const QueryInstance> workload,
                                 std::span<const IndexArm> config) const {
  double total = 0.0;
  for (const auto& query : workload) {
    for (const auto& access : query.accesses) total += best_access_time(access, config);
  }
  return total;
}

MaterialiseResult Simulator::materialise(std::span<const IndexArm> config,
                                         const std::set<ArmId>& current, double budget) {
  double total = 0.0;
  for (const auto& arm : config) total += arm.estimated_size;
  // Relative slack absorbs summation-order rounding against the oracle's total.
  if (total > budget * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        fmt::format("configuration needs {:.0f} bytes, budget is {:.0f}", total, budget));
  }
  MaterialiseResult result;
  std::set<ArmId> wanted;
  for (const auto& arm : config) {
    wanted.insert(arm.arm_id);
    if (!current.contains(arm.arm_id)) {
      result.creation_times[arm.arm_id] = creation_time(arm) * noise();
    }
  }
  for (const auto& id : current) {
    if (!wanted.contains(id)) result.dropped.push_back(id);
  }
  return result;
}

RoundOutcome Simulator::execute(std::span<const QueryInstance> workload,
                                std::span<const IndexArm> config) {
  RoundOutcome outcome;
  for (const auto& arm : config) outcome.configuration.push_back(arm.arm_id);
  std::sort(outcome.configuration.begin(), outcome.configuration.end());

  for (const auto& query : workload) {
    QueryExecution exec;
    exec.template_id = template_signature(query);
    for (const auto& access : query.accesses) {
      double best = full_scan_time(access);
      const IndexArm* chosen = nullptr;
      for (const auto& arm : config) {
        if (auto t = index_access_time(access, arm); t && *t < best) {
          best = *t;
          chosen = &arm;
        }
      }
      TableAccessRecord record{access.table, std::nullopt, best * noise()};
      if (chosen != nullptr) {
        record.index = chosen->arm_id;
        exec.used_indices.insert(chosen->arm_id);
      }
      exec.elapsed += record.seconds;
      exec.accesses.push_back(std::move(record));
    }
    outcome.queries.push_back(std::move(exec));
  }
  return outcome;
}

}  // namespace indextune
