#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "reuse/engine.hpp"
#include "reuse/tables.hpp"

namespace reuse::detail {

// Row-range scans over decoded columns, shared by the row and scan engines.

template <typename Pred>
void scan_collect_int(const Column& col, std::size_t begin, std::size_t end, Pred pred,
                      std::vector<RowId>& out, const QueryContext& ctx) {
  for (std::size_t r = begin; r < end; ++r) {
    ctx.tick();
    ++ctx.stats.rows_visited;
    if (pred(col.ints[r])) out.push_back(static_cast<RowId>(r));
  }
}

template <typename Pred>
void scan_collect_str(const Column& col, std::size_t begin, std::size_t end, Pred pred,
                      std::vector<RowId>& out, const QueryContext& ctx) {
  for (std::size_t r = begin; r < end; ++r) {
    ctx.tick();
    ++ctx.stats.rows_visited;
    if (pred(col.strs[r])) out.push_back(static_cast<RowId>(r));
  }
}

inline bool sorted_contains(const std::vector<std::int64_t>& keys, std::int64_t v) {
  return std::binary_search(keys.begin(), keys.end(), v);
}

inline bool sorted_contains(const std::vector<std::string>& keys, const std::string& v) {
  return std::binary_search(keys.begin(), keys.end(), v);
}

}  // namespace reuse::detail
