#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reuse/engine.hpp"
#include "reuse/schema.hpp"

namespace reuse {

struct ReceptionResult {
  // Ordered by (dst_doc_id, dst_start, src_start), full tuple as tiebreak.
  std::vector<ReceptionEdgeRow> rows;
};

struct QuoteRow {
  std::int64_t piece_id = 0;
  std::string doc_id;
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::int64_t piece_length = 0;  // 150..300 inclusive
  std::int64_t n_reuses = 0;      // >= 1

  friend bool operator==(const QuoteRow&, const QuoteRow&) = default;
};

inline constexpr std::int64_t kQuoteMinLen = 150;
inline constexpr std::int64_t kQuoteMaxLen = 300;
inline constexpr std::int64_t kQuoteLimit = 100;

// All reception edges whose source piece belongs to `doc` (co-source pieces
// of other equally dated documents are excluded). The plan depends on the
// handle's normalization level: Standard recomputes destination pieces from
// scratch, Intermediate reads the materialized destination_pieces table and
// Denorm filters the reception_edges table. Unknown documents yield an empty
// result; a closed handle throws.
ReceptionResult reception(const DatasetHandle& handle, const std::string& doc,
                          QueryContext& ctx);

// Source pieces of the edition's documents with length 150..300 that were
// reused by at least one author-disjoint document, ordered by n_reuses
// descending then piece_id, truncated to `limit`.
std::vector<QuoteRow> top_quotes(const DatasetHandle& handle, const std::string& edition,
                                 QueryContext& ctx, std::int64_t limit = kQuoteLimit);

// Convenience overloads with a fresh context (no deadline).
ReceptionResult reception(const DatasetHandle& handle, const std::string& doc);
std::vector<QuoteRow> top_quotes(const DatasetHandle& handle, const std::string& edition,
                                 std::int64_t limit = kQuoteLimit);

void sort_reception_rows(std::vector<ReceptionEdgeRow>& rows);

}  // namespace reuse
