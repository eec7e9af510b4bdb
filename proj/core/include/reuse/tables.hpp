#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace reuse {

enum class NormalizationLevel { Standard, Intermediate, Denorm };

std::string to_string(NormalizationLevel level);
NormalizationLevel parse_level(std::string_view s);  // throws on unknown names

enum class ColumnType { Int64, String };

struct Column {
  std::string name;
  ColumnType type = ColumnType::Int64;
  std::vector<std::int64_t> ints;
  std::vector<std::string> strs;

  std::size_t size() const { return type == ColumnType::Int64 ? ints.size() : strs.size(); }

  static Column int64(std::string name) { return Column{std::move(name), ColumnType::Int64, {}, {}}; }
  static Column string(std::string name) { return Column{std::move(name), ColumnType::String, {}, {}}; }
};

struct Table {
  std::string name;
  std::vector<Column> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  const Column& col(std::string_view name) const;  // throws on unknown column
  int col_index(std::string_view name) const;      // -1 if absent
};

// A normalization level plus the exact table set that level carries.
struct Dataset {
  NormalizationLevel level = NormalizationLevel::Standard;
  std::vector<Table> tables;

  const Table& table(std::string_view name) const;
  bool has_table(std::string_view name) const;
};

// Table names that make up each level. Each level is a strict superset of
// the previous one.
std::vector<std::string> level_table_names(NormalizationLevel level);

// Digest of the logical row content (order-insensitive), used by equivalence
// checks across engines.
std::uint64_t table_content_digest(const Table& t);

}  // namespace reuse
