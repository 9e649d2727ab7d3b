#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace indextune {

// Strong ids. Columns are numbered globally across all tables so a column id
// doubles as the column's slot in the context vector.
enum class TableId : std::uint32_t {};
enum class ColumnId : std::uint32_t {};

constexpr std::size_t index_of(TableId t) { return static_cast<std::size_t>(t); }
constexpr std::size_t index_of(ColumnId c) { return static_cast<std::size_t>(c); }

using ArmId = std::string;
using TemplateId = std::string;

struct ColumnInfo {
  std::string name;
  TableId table{};
  std::uint32_t width = 1;  // bytes
  std::uint64_t distinct = 1;
};

struct SimTable {
  std::string name;
  std::uint64_t row_count = 1;
  std::vector<ColumnId> columns;
};

class Schema {
 public:
  TableId add_table(std::string name, std::uint64_t row_count);
  ColumnId add_column(TableId table, std::string name, std::uint32_t width,
                      std::uint64_t distinct);

  const SimTable& table(TableId id) const { return tables_.at(index_of(id)); }
  const ColumnInfo& column(ColumnId id) const { return columns_.at(index_of(id)); }

  std::size_t table_count() const { return tables_.size(); }
  std::size_t column_count() const { return columns_.size(); }

  std::optional<TableId> find_table(std::string_view name) const;
  std::optional<ColumnId> find_column(TableId table, std::string_view name) const;

  /// Bytes per row of the base table.
  std::uint64_t row_width(TableId id) const;
  /// Bytes of all base tables together; the unit of "1x" memory budgets.
  double data_size() const;

 private:
  std::vector<SimTable> tables_;
  std::vector<ColumnInfo> columns_;
};

}  // namespace indextune
