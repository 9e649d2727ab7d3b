#include "indextune/schema.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "indextune/query.hpp"

namespace indextune {

TableId Schema::add_table(std::string name, std::uint64_t row_count) {
  if (row_count < 1) {
    throw std::invalid_argument(fmt::format("table '{}': row_count must be >= 1", name));
  }
  if (find_table(name)) {
    throw std::invalid_argument(fmt::format("duplicate table '{}'", name));
  }
  tables_.push_back(SimTable{std::move(name), row_count, {}});
  return static_cast<TableId>(tables_.size() - 1);
}

ColumnId Schema::add_column(TableId table, std::string name, std::uint32_t width,
                            std::uint64_t distinct) {
  auto& t = tables_.at(index_of(table));
  if (width < 1) {
    throw std::invalid_argument(
        fmt::format("column '{}.{}': width must be >= 1", t.name, name));
  }
  if (find_column(table, name)) {
    throw std::invalid_argument(fmt::format("duplicate column '{}.{}'", t.name, name));
  }
  columns_.push_back(ColumnInfo{std::move(name), table, width, std::max<std::uint64_t>(distinct, 1)});
  const auto id = static_cast<ColumnId>(columns_.size() - 1);
  t.columns.push_back(id);
  return id;
}

std::optional<TableId> Schema::find_table(std::string_view name) const {
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    if (tables_[i].name == name) return static_cast<TableId>(i);
  }
  return std::nullopt;
}

std::optional<ColumnId> Schema::find_column(TableId table, std::string_view name) const {
  for (ColumnId c : tables_.at(index_of(table)).columns) {
    if (columns_[index_of(c)].name == name) return c;
  }
  return std::nullopt;
}

std::uint64_t Schema::row_width(TableId id) const {
  std::uint64_t width = 0;
  for (ColumnId c : table(id).columns) width += column(c).width;
  return width;
}

double Schema::data_size() const {
  double total = 0.0;
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    const auto id = static_cast<TableId>(i);
    total += static_cast<double>(table(id).row_count) * static_cast<double>(row_width(id));
  }
  return total;
}

double TableAccessSpec::selectivity() const {
  double s = 1.0;
  for (const auto& p : predicates) s *= p.selectivity;
  return s;
}

bool TableAccessSpec::has_predicate(ColumnId c) const {
  return std::any_of(predicates.begin(), predicates.end(),
                     [c](const PredicateInstance& p) { return p.column == c; });
}

std::vector<ColumnId> TableAccessSpec::needed_columns() const {
  std::vector<ColumnId> cols = payload;
  for (const auto& p : predicates) cols.push_back(p.column);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  return cols;
}

double QueryInstance::selectivity() const {
  double s = 1.0;
  for (const auto& a : accesses) s *= a.selectivity();
  return s;
}

TemplateId template_signature(const QueryInstance& query) {
  std::vector<std::string> parts;
  for (const auto& access : query.accesses) {
    std::vector<std::size_t> preds;
    for (const auto& p : access.predicates) preds.push_back(index_of(p.column));
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
    std::vector<std::size_t> payload;
    for (ColumnId c : access.payload) payload.push_back(index_of(c));
    std::sort(payload.begin(), payload.end());
    payload.erase(std::unique(payload.begin(), payload.end()), payload.end());
    parts.push_back(fmt::format("t{}:{}|{}", index_of(access.table), fmt::join(preds, ","),
                                fmt::join(payload, ",")));
  }
  std::sort(parts.begin(), parts.end());
  return fmt::format("{}", fmt::join(parts, ";"));
}

}  // namespace indextune
