#include "indextune/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace indextune {

bool SuperArm::contains(const ArmId& id) const {
  return std::binary_search(arm_ids.begin(), arm_ids.end(), id);
}

bool is_key_prefix(std::span<const ColumnId> prefix, std::span<const ColumnId> key) {
  return !prefix.empty() && prefix.size() <= key.size() &&
         std::equal(prefix.begin(), prefix.end(), key.begin());
}

namespace {

struct PassResult {
  SuperArm arm;
  double value = 0.0;
};

bool prefix_related(const SelectionCandidate& a, const SelectionCandidate& b) {
  return a.table == b.table &&
         (is_key_prefix(a.key_columns, b.key_columns) || is_key_prefix(b.key_columns, a.key_columns));
}

bool only_generated_for(const SelectionCandidate& c, const TemplateId& q) {
  return c.source_templates.size() == 1 && c.source_templates.front() == q;
}

// `pool` arrives ranked best-first; each step takes the first survivor.
PassResult greedy_pass(std::vector<const SelectionCandidate*> pool, double budget) {
  PassResult result;
  // Accumulated exactly like SuperArm::total_cost so the budget check and the
  // reported cost agree bit for bit.
  double used = 0.0;
  std::vector<const SelectionCandidate*> picked;

  auto drop_infeasible = [&] {
    std::erase_if(pool, [&](const SelectionCandidate* c) { return used + c->memory_cost > budget; });
  };
  drop_infeasible();

  while (!pool.empty()) {
    const SelectionCandidate* pick = pool.front();
    pool.erase(pool.begin());
    picked.push_back(pick);
    used += pick->memory_cost;
    result.value += pick->score;

    drop_infeasible();
    std::erase_if(pool, [&](const SelectionCandidate* c) { return prefix_related(*c, *pick); });
    for (const auto& q : pick->covering_for) {
      std::erase_if(pool, [&](const SelectionCandidate* c) { return only_generated_for(*c, q); });
    }
  }

  for (const auto* c : picked) {
    result.arm.arm_ids.push_back(c->arm_id);
    result.arm.total_cost += c->memory_cost;
  }
  std::sort(result.arm.arm_ids.begin(), result.arm.arm_ids.end());
  return result;
}

std::vector<const SelectionCandidate*> ranked(std::span<const SelectionCandidate> candidates,
                                              bool by_density) {
  std::vector<const SelectionCandidate*> pool;
  for (const auto& c : candidates) {
    if (c.score >= 0.0) pool.push_back(&c);
  }
  auto key = [by_density](const SelectionCandidate* c) {
    if (!by_density) return c->score;
    // Zero-cost arms with a positive score are free value; rank them first.
    return c->memory_cost > 0.0 ? c->score / c->memory_cost
                                : (c->score > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  };
  std::stable_sort(pool.begin(), pool.end(),
                   [&](const SelectionCandidate* a, const SelectionCandidate* b) {
                     const double ka = key(a);
                     const double kb = key(b);
                     if (ka != kb) return ka > kb;
                     return a->arm_id < b->arm_id;
                   });
  return pool;
}

}  // namespace

SuperArm select_super_arm(std::span<const SelectionCandidate> candidates, double budget,
                          const OracleOptions& options) {
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be >= 0");
  for (const auto& c : candidates) {
    if (!(c.memory_cost >= 0.0)) {
      throw std::invalid_argument(fmt::format("arm {}: memory cost must be >= 0", c.arm_id));
    }
  }

  switch (options.criterion) {
    case GreedyCriterion::score:
      return greedy_pass(ranked(candidates, false), budget).arm;
    case GreedyCriterion::density:
      return greedy_pass(ranked(candidates, true), budget).arm;
    case GreedyCriterion::best_of: {
      auto by_score = greedy_pass(ranked(candidates, false), budget);
      auto by_density = greedy_pass(ranked(candidates, true), budget);
      return by_density.value > by_score.value ? std::move(by_density.arm)
                                               : std::move(by_score.arm);
    }
  }
  return {};
}

double super_arm_value(const std::map<ArmId, double>& scores, const SuperArm& super_arm) {
  double total = 0.0;
  for (const auto& id : super_arm.arm_ids) {
    auto it = scores.find(id);
    if (it == scores.end()) {
      throw std::invalid_argument(fmt::format("no score for super-arm member {}", id));
    }
    total += it->second;
  }
  return total;
}

}  // namespace indextune
