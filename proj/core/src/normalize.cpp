#include "reuse/normalize.hpp"

#include <stdexcept>

namespace reuse {

static bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

static char to_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

NormalizedText normalize_text(const std::string& text) {
  NormalizedText out;
  out.text.reserve(text.size());
  out.map.reserve(text.size());

  std::int64_t pending_space_at = -1;  // first byte of the current whitespace run
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (is_space(c)) {
      if (pending_space_at < 0) pending_space_at = static_cast<std::int64_t>(i);
      continue;
    }
    if (pending_space_at >= 0) {
      if (!out.text.empty()) {  // leading whitespace is dropped
        out.text += ' ';
        out.map.push_back(pending_space_at);
      }
      pending_space_at = -1;
    }
    out.text += to_lower(c);
    out.map.push_back(static_cast<std::int64_t>(i));
  }
  // a trailing whitespace run is dropped
  return out;
}

std::pair<std::int64_t, std::int64_t> decode_span(const OffsetMap& map, std::int64_t norm_start,
                                                  std::int64_t norm_end) {
  if (norm_start < 0 || norm_start >= norm_end ||
      norm_end > static_cast<std::int64_t>(map.size())) {
    throw std::out_of_range("decode_span: span [" + std::to_string(norm_start) + "," +
                            std::to_string(norm_end) + ") out of range for map of size " +
                            std::to_string(map.size()));
  }
  return {map[static_cast<std::size_t>(norm_start)],
          map[static_cast<std::size_t>(norm_end - 1)] + 1};
}

}  // namespace reuse
