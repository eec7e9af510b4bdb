#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace reuse::csv {

// Minimal RFC4180-style CSV. Fields containing comma, quote or newline are
// quoted on write; quoted fields are unescaped on read.

std::string escape_field(const std::string& field);
void write_row(std::ostream& os, const std::vector<std::string>& fields);

// Reads one logical row (handles quoted newlines). Returns false at EOF.
bool read_row(std::istream& is, std::vector<std::string>& fields);

}  // namespace reuse::csv
