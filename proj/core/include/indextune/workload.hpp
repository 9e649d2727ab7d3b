#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "indextune/query.hpp"
#include "indextune/random.hpp"

namespace indextune {

enum class Regime {
  kStatic,    // every template once per round
  kShifting,  // disjoint template groups, one group at a time
  kRandom,    // templates drawn uniformly at random each round
};

std::string_view to_string(Regime regime);
std::optional<Regime> parse_regime(std::string_view text);

struct PredicateTemplate {
  ColumnId column{};
  double selectivity_lo = 0.01;
  double selectivity_hi = 0.01;
};

struct TableAccessTemplate {
  TableId table{};
  std::vector<PredicateTemplate> predicates;
  std::vector<ColumnId> payload;
};

struct QueryTemplateSpec {
  std::string name;
  std::vector<TableAccessTemplate> accesses;
};

struct WorkloadSpec {
  std::vector<QueryTemplateSpec> templates;
  std::size_t rounds = 25;
  std::size_t groups = 4;             // shifting
  std::size_t rounds_per_group = 20;  // shifting
  std::size_t queries_per_round = 0;  // random; 0 picks the size automatically
};

/// Draws per-instance selectivities uniformly inside each predicate's range.
QueryInstance instantiate(const QueryTemplateSpec& spec, Rng& rng);

/// Queries per round for the random regime so that the expected share of a
/// round's queries whose template also ran in the previous round is one half:
/// the n solving 1 - (1 - 1/pool)^n = 0.5, rounded.
std::size_t random_round_size(std::size_t pool_size);

/// Template groups used by the shifting regime for `seed`: the templates are
/// shuffled and dealt into `groups` near-equal disjoint groups.
std::vector<std::vector<std::size_t>> shifting_groups(const WorkloadSpec& spec, std::uint64_t seed);

/// Throws std::invalid_argument on an empty template pool, or fewer templates
/// than shifting groups.
Workload generate_workload(Regime regime, const WorkloadSpec& spec, std::uint64_t seed);

/// Mean over rounds t >= 2 of the fraction of round t's queries whose template
/// also appears in round t - 1.
double round_repeat_rate(const Workload& workload);

}  // namespace indextune
