#include "reuse/hits_io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "reuse/csv.hpp"

namespace reuse {

static const std::vector<std::string> kHitsHeader = {"doc_a", "start_a", "end_a",
                                                     "doc_b", "start_b", "end_b"};

static std::int64_t parse_int(const std::string& s, const std::string& where) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::runtime_error(where + ": not an integer: \"" + s + "\"");
  return v;
}

std::vector<Hit> ingest_hits(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open hits file: " + path.string());

  std::vector<std::string> row;
  if (!csv::read_row(in, row) || row != kHitsHeader)
    throw std::runtime_error(path.string() + ": missing or malformed hits header");

  std::vector<Hit> hits;
  std::size_t rowno = 1;
  while (csv::read_row(in, row)) {
    ++rowno;
    if (row.size() == 1 && row[0].empty()) continue;
    std::string where = path.string() + ": row " + std::to_string(rowno);
    if (row.size() != 6) throw std::runtime_error(where + ": expected 6 fields");
    Hit h{row[0], parse_int(row[1], where), parse_int(row[2], where),
          row[3], parse_int(row[4], where), parse_int(row[5], where)};
    try {
      hits.push_back(canonical_hit(std::move(h)));
    } catch (const std::runtime_error& e) {
      throw std::runtime_error(where + ": " + e.what());
    }
  }
  canonicalize_hits(hits);
  return hits;
}

void write_hits(const std::vector<Hit>& hits, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write hits file: " + path.string());
  csv::write_row(out, kHitsHeader);
  for (const auto& h : hits) {
    csv::write_row(out, {h.doc_a, std::to_string(h.start_a), std::to_string(h.end_a), h.doc_b,
                         std::to_string(h.start_b), std::to_string(h.end_b)});
  }
}

}  // namespace reuse
