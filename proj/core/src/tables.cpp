#include "reuse/tables.hpp"

#include <stdexcept>

namespace reuse {

std::string to_string(NormalizationLevel level) {
  switch (level) {
    case NormalizationLevel::Standard: return "standard";
    case NormalizationLevel::Intermediate: return "intermediate";
    case NormalizationLevel::Denorm: return "denorm";
  }
  return "?";
}

NormalizationLevel parse_level(std::string_view s) {
  if (s == "standard") return NormalizationLevel::Standard;
  if (s == "intermediate") return NormalizationLevel::Intermediate;
  if (s == "denorm") return NormalizationLevel::Denorm;
  throw std::runtime_error("unknown normalization level: " + std::string(s));
}

const Column& Table::col(std::string_view col_name) const {
  for (const auto& c : columns)
    if (c.name == col_name) return c;
  throw std::runtime_error("table " + name + " has no column " + std::string(col_name));
}

int Table::col_index(std::string_view col_name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].name == col_name) return static_cast<int>(i);
  return -1;
}

const Table& Dataset::table(std::string_view name) const {
  for (const auto& t : tables)
    if (t.name == name) return t;
  throw std::runtime_error("dataset has no table " + std::string(name));
}

bool Dataset::has_table(std::string_view name) const {
  for (const auto& t : tables)
    if (t.name == name) return true;
  return false;
}

std::vector<std::string> level_table_names(NormalizationLevel level) {
  std::vector<std::string> names = {"docs", "doc_authors", "defrag_pieces",
                                    "clustered_defrag_pieces", "source_pieces"};
  if (level == NormalizationLevel::Intermediate || level == NormalizationLevel::Denorm)
    names.push_back("destination_pieces");
  if (level == NormalizationLevel::Denorm) {
    names.push_back("reception_edges");
    names.push_back("source_piece_statistics");
  }
  return names;
}

std::uint64_t table_content_digest(const Table& t) {
  auto mix = [](std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return h;
  };
  auto str_hash = [](const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  };
  // Order-insensitive: sum of per-row digests.
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    std::uint64_t row_h = 0;
    for (const auto& c : t.columns) {
      if (c.type == ColumnType::Int64)
        row_h = mix(row_h, static_cast<std::uint64_t>(c.ints[r]));
      else
        row_h = mix(row_h, str_hash(c.strs[r]));
    }
    total += row_h;
  }
  return total;
}

}  // namespace reuse
