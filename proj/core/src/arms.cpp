#include "indextune/arms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace indextune {

namespace {

std::vector<std::string> names_of(const Schema& schema, std::span<const ColumnId> cols) {
  std::vector<std::string> names;
  names.reserve(cols.size());
  for (ColumnId c : cols) names.push_back(schema.column(c).name);
  return names;
}

// Every ordered selection of `width` distinct columns from `pool`.
void permutations(std::span<const ColumnId> pool, std::size_t width,
                  std::vector<ColumnId>& prefix, std::vector<bool>& used,
                  std::vector<std::vector<ColumnId>>& out) {
  if (prefix.size() == width) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    prefix.push_back(pool[i]);
    permutations(pool, width, prefix, used, out);
    prefix.pop_back();
    used[i] = false;
  }
}

}  // namespace

ArmId make_arm_id(const Schema& schema, TableId table, std::span<const ColumnId> key,
                  std::span<const ColumnId> payload) {
  const auto& tname = schema.table(table).name;
  if (payload.empty()) return fmt::format("{}({})", tname, fmt::join(names_of(schema, key), ","));
  return fmt::format("{}({})+({})", tname, fmt::join(names_of(schema, key), ","),
                     fmt::join(names_of(schema, payload), ","));
}

double estimate_index_size(const Schema& schema, TableId table, std::span<const ColumnId> key,
                           std::span<const ColumnId> payload) {
  double width = 8.0;
  for (ColumnId c : key) width += schema.column(c).width;
  for (ColumnId c : payload) width += schema.column(c).width;
  return static_cast<double>(schema.table(table).row_count) * width;
}

IndexArm make_arm(const Schema& schema, TableId table, std::vector<ColumnId> key,
                  std::vector<ColumnId> payload) {
  if (key.empty()) throw std::invalid_argument("index needs at least one key column");
  std::sort(payload.begin(), payload.end());
  payload.erase(std::unique(payload.begin(), payload.end()), payload.end());
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (schema.column(key[i]).table != table) {
      throw std::invalid_argument("key column from another table");
    }
    if (std::find(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(i), key[i]) !=
        key.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw std::invalid_argument("duplicate key column");
    }
  }
  for (ColumnId c : payload) {
    if (schema.column(c).table != table) {
      throw std::invalid_argument("payload column from another table");
    }
    if (std::find(key.begin(), key.end(), c) != key.end()) {
      throw std::invalid_argument("payload column repeats a key column");
    }
  }
  IndexArm arm;
  arm.arm_id = make_arm_id(schema, table, key, payload);
  arm.table = table;
  arm.estimated_size = estimate_index_size(schema, table, key, payload);
  arm.key_columns = std::move(key);
  arm.payload_columns = std::move(payload);
  return arm;
}

std::vector<IndexArm> generate_arms(const Schema& schema,
                                    std::span<const QueryTemplateInfo> templates,
                                    std::size_t max_key_width) {
  if (max_key_width < 1) throw std::invalid_argument("max_key_width must be >= 1");
  std::map<ArmId, IndexArm> arms;
  auto add = [&](TableId table, std::vector<ColumnId> key, std::vector<ColumnId> payload,
                 const TemplateId& source) {
    auto arm = make_arm(schema, table, std::move(key), std::move(payload));
    auto [it, inserted] = arms.try_emplace(arm.arm_id, std::move(arm));
    it->second.source_templates.insert(source);
  };

  for (const auto& tmpl : templates) {
    for (const auto& on_table : tmpl.tables) {
      const auto& preds = on_table.predicates;
      if (preds.empty()) continue;
      std::vector<ColumnId> extra_payload;
      std::set_difference(on_table.payload.begin(), on_table.payload.end(), preds.begin(),
                          preds.end(), std::back_inserter(extra_payload));
      const std::size_t full_width = std::min(preds.size(), max_key_width);
      for (std::size_t width = 1; width <= full_width; ++width) {
        std::vector<std::vector<ColumnId>> keys;
        std::vector<ColumnId> prefix;
        std::vector<bool> used(preds.size(), false);
        permutations(preds, width, prefix, used, keys);
        for (auto& key : keys) {
          if (width == full_width && !extra_payload.empty()) {
            add(on_table.table, key, extra_payload, tmpl.template_id);
          }
          add(on_table.table, std::move(key), {}, tmpl.template_id);
        }
      }
    }
  }

  std::vector<IndexArm> out;
  out.reserve(arms.size());
  for (auto& [id, arm] : arms) out.push_back(std::move(arm));
  return out;
}

std::size_t context_dimension(const Schema& schema) { return schema.column_count() + 3; }

ContextVector build_context(const IndexArm& arm, const ContextInputs& inputs) {
  if (inputs.schema == nullptr) throw std::invalid_argument("context needs a schema");
  if (!(inputs.db_size > 0.0)) throw std::invalid_argument("database size must be > 0");
  const auto columns = inputs.schema->column_count();
  ContextVector ctx{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(columns + 3))};

  double weight = 1.0;
  for (ColumnId c : arm.key_columns) {
    weight *= 0.1;  // 10^-j for the j-th key column, j from 1
    if (inputs.template_predicates.contains(c)) {
      ctx.values[static_cast<Eigen::Index>(index_of(c))] = weight;
    }
  }

  std::vector<ColumnId> indexed = arm.key_columns;
  indexed.insert(indexed.end(), arm.payload_columns.begin(), arm.payload_columns.end());
  std::sort(indexed.begin(), indexed.end());
  bool covering = false;
  for (const auto& tmpl : inputs.templates) {
    if (!arm.source_templates.contains(tmpl.template_id)) continue;
    const auto* on_table = tmpl.on_table(arm.table);
    if (on_table == nullptr) continue;
    std::vector<ColumnId> needed = on_table->predicates;
    needed.insert(needed.end(), on_table->payload.begin(), on_table->payload.end());
    std::sort(needed.begin(), needed.end());
    if (std::includes(indexed.begin(), indexed.end(), needed.begin(), needed.end())) {
      covering = true;
      break;
    }
  }

  const bool materialised =
      inputs.materialised != nullptr && inputs.materialised->contains(arm.arm_id);
  double usage = 0.0;
  if (inputs.usage_history != nullptr) {
    if (auto it = inputs.usage_history->find(arm.arm_id); it != inputs.usage_history->end()) {
      usage = it->second;
    }
  }

  const auto base = static_cast<Eigen::Index>(columns);
  ctx.values[base] = covering ? 1.0 : 0.0;
  ctx.values[base + 1] =
      materialised ? 0.0 : std::min(1.0, arm.estimated_size / inputs.db_size);
  ctx.values[base + 2] = usage;
  return ctx;
}

void UsageTracker::observe_round(const std::set<ArmId>& used) {
  for (auto& [id, u] : usage_) u *= decay_;
  for (const auto& id : used) usage_[id] += 1.0;
  std::erase_if(usage_, [](const auto& kv) { return kv.second < 1e-12; });
}

}  // namespace indextune
