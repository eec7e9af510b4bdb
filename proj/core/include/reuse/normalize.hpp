#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace reuse {

// Maps each normalized-text index to the original-text index it came from.
// Monotonically non-decreasing; size equals the normalized text length.
using OffsetMap = std::vector<std::int64_t>;

struct NormalizedText {
  std::string text;
  OffsetMap map;
};

// Lowercases ASCII letters, collapses each maximal whitespace run to a single
// space and strips leading/trailing whitespace. A collapsed space maps to the
// first whitespace byte of its run. Bytes >= 0x80 pass through untouched, so
// offsets stay valid byte offsets into UTF-8 text.
NormalizedText normalize_text(const std::string& text);

// Translates a half-open span on normalized text back to original offsets:
// start = map[norm_start], end = map[norm_end - 1] + 1.
// Requires 0 <= norm_start < norm_end <= map.size(); throws std::out_of_range
// otherwise (empty spans are rejected).
std::pair<std::int64_t, std::int64_t> decode_span(const OffsetMap& map, std::int64_t norm_start,
                                                  std::int64_t norm_end);

}  // namespace reuse
