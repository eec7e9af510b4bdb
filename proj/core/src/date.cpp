#include "reuse/date.hpp"

#include <cstdio>
#include <stdexcept>

namespace reuse {

std::string format_pub_date(const std::optional<PubDate>& d) {
  if (!d) return "";
  char buf[16];
  if (d->month && d->day) {
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d->year, *d->month, *d->day);
  } else {
    std::snprintf(buf, sizeof(buf), "%04d", d->year);
  }
  return buf;
}

static bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

std::optional<PubDate> parse_pub_date(const std::string& s) {
  if (s.empty()) return std::nullopt;
  PubDate d;
  if (s.size() == 4 && all_digits(s, 0, 4)) {
    d.year = std::stoi(s);
    return d;
  }
  if (s.size() == 10 && s[4] == '-' && s[7] == '-' && all_digits(s, 0, 4) &&
      all_digits(s, 5, 7) && all_digits(s, 8, 10)) {
    d.year = std::stoi(s.substr(0, 4));
    int m = std::stoi(s.substr(5, 2));
    int day = std::stoi(s.substr(8, 2));
    if (m < 1 || m > 12 || day < 1 || day > 31)
      throw std::runtime_error("invalid pub_date: " + s);
    d.month = m;
    d.day = day;
    return d;
  }
  throw std::runtime_error("invalid pub_date format: \"" + s + "\" (expected YYYY or YYYY-MM-DD)");
}

}  // namespace reuse
