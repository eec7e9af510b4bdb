#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "reuse/hits.hpp"

namespace reuse {

// A text fragment: (doc id, start, end) on the original text, with a dense id.
struct Piece {
  std::int64_t piece_id = 0;
  std::string doc_id;
  std::int64_t start = 0;
  std::int64_t end = 0;

  std::int64_t length() const { return end - start; }
  friend bool operator==(const Piece&, const Piece&) = default;
};

// Undirected, stored with u < v, no duplicates.
struct ReuseEdge {
  std::int64_t u = 0;
  std::int64_t v = 0;
  friend bool operator==(const ReuseEdge&, const ReuseEdge&) = default;
  friend auto operator<=>(const ReuseEdge&, const ReuseEdge&) = default;
};

struct DefragConfig {
  double min_overlap_frac = 0.8;  // fraction of the shorter piece that must overlap
  double max_len_ratio = 1.25;    // longer/shorter length cap

  void validate() const;
};

struct DefragResult {
  std::vector<Piece> pieces;      // piece_ids assigned in (doc_id, start, end) order
  std::vector<ReuseEdge> edges;
};

// Phase 1: conservative merging of overlapping raw pieces within a document.
// Two raw pieces are merge-candidates iff their overlap covers at least
// min_overlap_frac of the shorter one AND their length ratio is at most
// max_len_ratio; groups under that relation (single union-find pass over raw
// pieces) collapse to their covering span. Hit sides are remapped to the
// merged pieces; self-loops dropped, duplicate edges removed.
DefragResult defragment(const std::vector<Hit>& hits, const DefragConfig& config = {});

}  // namespace reuse
