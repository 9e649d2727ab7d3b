#include "indextune/query_store.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace indextune {

namespace {

void sort_unique(std::vector<ColumnId>& cols) {
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
}

}  // namespace

const TemplateTableColumns* QueryTemplateInfo::on_table(TableId table) const {
  for (const auto& t : tables) {
    if (t.table == table) return &t;
  }
  return nullptr;
}

QueryTemplateInfo describe_template(const QueryInstance& query) {
  QueryTemplateInfo info;
  info.template_id = template_signature(query);
  info.label = query.template_name;
  std::map<TableId, TemplateTableColumns> by_table;
  for (const auto& access : query.accesses) {
    auto& cols = by_table[access.table];
    cols.table = access.table;
    for (const auto& p : access.predicates) cols.predicates.push_back(p.column);
    cols.payload.insert(cols.payload.end(), access.payload.begin(), access.payload.end());
  }
  for (auto& [table, cols] : by_table) {
    sort_unique(cols.predicates);
    sort_unique(cols.payload);
    info.tables.push_back(std::move(cols));
  }
  return info;
}

QueryStore::QueryStore(std::uint32_t qoi_window) : window_(qoi_window) {
  if (qoi_window == 0) throw std::invalid_argument("QoI window must be >= 1");
}

double QueryStore::ingest(std::uint32_t round, std::span<const QueryInstance> executed) {
  if (before_last_) {
    if (round < before_last_->round) {
      throw std::invalid_argument(fmt::format("round {} ingested after round {}", round,
                                              before_last_->round));
    }
    if (round == before_last_->round) templates_ = before_last_->templates;
  }
  before_last_ = Snapshot{round, templates_};

  std::set<TemplateId> distinct;
  std::set<TemplateId> fresh;
  for (const auto& query : executed) {
    auto info = describe_template(query);
    const double selectivity = query.selectivity();
    distinct.insert(info.template_id);
    auto [it, inserted] = templates_.try_emplace(info.template_id, std::move(info));
    auto& stored = it->second;
    if (inserted) {
      fresh.insert(stored.template_id);
      stored.frequency = 1;
      stored.avg_selectivity = selectivity;
      stored.first_seen = round;
    } else {
      ++stored.frequency;
      stored.avg_selectivity +=
          (selectivity - stored.avg_selectivity) / static_cast<double>(stored.frequency);
    }
    stored.last_seen = round;
  }
  if (distinct.empty()) return 0.0;
  return static_cast<double>(fresh.size()) / static_cast<double>(distinct.size());
}

std::vector<QueryTemplateInfo> QueryStore::queries_of_interest(std::uint32_t round) const {
  std::vector<QueryTemplateInfo> out;
  for (const auto& [id, info] : templates_) {
    if (info.last_seen <= round && round - info.last_seen < window_) out.push_back(info);
  }
  return out;
}

}  // namespace indextune
