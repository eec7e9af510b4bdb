#include "reuse/csv.hpp"

#include <istream>
#include <ostream>

namespace reuse::csv {

std::string escape_field(const std::string& field) {
  bool needs_quote = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quote) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << escape_field(fields[i]);
  }
  os << '\n';
}

bool read_row(std::istream& is, std::vector<std::string>& fields) {
  fields.clear();
  int c = is.get();
  if (c == std::istream::traits_type::eof()) return false;

  std::string cur;
  bool in_quotes = false;
  bool any = false;
  while (true) {
    if (c == std::istream::traits_type::eof()) {
      fields.push_back(cur);
      return true;
    }
    char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        int next = is.peek();
        if (next == '"') {
          cur += '"';
          is.get();
        } else {
          in_quotes = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"' && cur.empty() && !any) {
      in_quotes = true;
      any = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
      any = false;
    } else if (ch == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      fields.push_back(cur);
      return true;
    } else {
      cur += ch;
      any = true;
    }
    c = is.get();
  }
}

}  // namespace reuse::csv
