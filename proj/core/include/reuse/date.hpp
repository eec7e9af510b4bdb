#pragma once

#include <optional>
#include <string>
#include <tuple>

namespace reuse {

// Publication date with day granularity; month/day may be absent.
// Year-only dates compare as January 1 of that year so that source
// identification has a total order.
struct PubDate {
  int year = 0;
  std::optional<int> month;
  std::optional<int> day;

  std::tuple<int, int, int> key() const { return {year, month.value_or(1), day.value_or(1)}; }

  friend bool operator==(const PubDate& a, const PubDate& b) {
    return a.year == b.year && a.month == b.month && a.day == b.day;
  }
};

// Wire format: "YYYY" or "YYYY-MM-DD". Empty string denotes a missing date.
std::string format_pub_date(const std::optional<PubDate>& d);

// Parses the wire format. Throws std::runtime_error on malformed input.
std::optional<PubDate> parse_pub_date(const std::string& s);

}  // namespace reuse
