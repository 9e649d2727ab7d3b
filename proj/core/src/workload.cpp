#include "indextune/workload.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "indextune/random.hpp"

namespace indextune {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kStatic:
      return "static";
    case Regime::kShifting:
      return "shifting";
    case Regime::kRandom:
      return "random";
  }
  return "static";
}

std::optional<Regime> parse_regime(std::string_view text) {
  if (text == "static") return Regime::kStatic;
  if (text == "shifting") return Regime::kShifting;
  if (text == "random") return Regime::kRandom;
  return std::nullopt;
}

QueryInstance instantiate(const QueryTemplateSpec& spec, Rng& rng) {
  QueryInstance q;
  q.template_name = spec.name;
  for (const auto& access : spec.accesses) {
    TableAccessSpec a;
    a.table = access.table;
    a.payload = access.payload;
    for (const auto& p : access.predicates) {
      a.predicates.push_back({p.column, rng.uniform(p.selectivity_lo, p.selectivity_hi)});
    }
    q.accesses.push_back(std::move(a));
  }
  return q;
}

std::size_t random_round_size(std::size_t pool_size) {
  if (pool_size <= 1) return 1;
  const double n = std::log(0.5) / std::log(1.0 - 1.0 / static_cast<double>(pool_size));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(n)));
}

std::vector<std::vector<std::size_t>> shifting_groups(const WorkloadSpec& spec,
                                                      std::uint64_t seed) {
  if (spec.groups == 0) throw std::invalid_argument("shifting regime needs >= 1 group");
  if (spec.templates.size() < spec.groups) {
    throw std::invalid_argument("shifting regime needs at least one template per group");
  }
  std::vector<std::size_t> order(spec.templates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed ^ 0x5eed'9f0u);
  rng.shuffle(order);

  std::vector<std::vector<std::size_t>> groups(spec.groups);
  const std::size_t base = order.size() / spec.groups;
  const std::size_t extra = order.size() % spec.groups;
  std::size_t next = 0;
  for (std::size_t g = 0; g < spec.groups; ++g) {
    const std::size_t size = base + (g < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) groups[g].push_back(order[next++]);
    std::sort(groups[g].begin(), groups[g].end());
  }
  return groups;
}

Workload generate_workload(Regime regime, const WorkloadSpec& spec, std::uint64_t seed) {
  if (spec.templates.empty()) throw std::invalid_argument("workload needs at least one template");
  Rng rng(seed);
  Workload rounds;

  switch (regime) {
    case Regime::kStatic: {
      for (std::size_t r = 0; r < spec.rounds; ++r) {
        RoundWorkload round;
        for (const auto& t : spec.templates) round.push_back(instantiate(t, rng));
        rounds.push_back(std::move(round));
      }
      break;
    }
    case Regime::kShifting: {
      if (spec.rounds_per_group == 0) {
        throw std::invalid_argument("shifting regime needs rounds_per_group >= 1");
      }
      const auto groups = shifting_groups(spec, seed);
      for (std::size_t r = 0; r < spec.rounds; ++r) {
        const auto& group = groups[(r / spec.rounds_per_group) % groups.size()];
        RoundWorkload round;
        for (std::size_t t : group) round.push_back(instantiate(spec.templates[t], rng));
        rounds.push_back(std::move(round));
      }
      break;
    }
    case Regime::kRandom: {
      const std::size_t per_round = spec.queries_per_round > 0
                                        ? spec.queries_per_round
                                        : random_round_size(spec.templates.size());
      for (std::size_t r = 0; r < spec.rounds; ++r) {
        RoundWorkload round;
        for (std::size_t i = 0; i < per_round; ++i) {
          round.push_back(instantiate(spec.templates[rng.below(spec.templates.size())], rng));
        }
        rounds.push_back(std::move(round));
      }
      break;
    }
  }
  return rounds;
}

double round_repeat_rate(const Workload& workload) {
  if (workload.size() < 2) return 0.0;
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t t = 1; t < workload.size(); ++t) {
    if (workload[t].empty()) continue;
    std::set<TemplateId> previous;
    for (const auto& q : workload[t - 1]) previous.insert(template_signature(q));
    std::size_t repeats = 0;
    for (const auto& q : workload[t]) repeats += previous.contains(template_signature(q)) ? 1 : 0;
    sum += static_cast<double>(repeats) / static_cast<double>(workload[t].size());
    ++counted;
  }
  return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
}

}  // namespace indextune
