#include "reuse/pipeline_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>

#include "reuse/csv.hpp"

namespace reuse {

namespace {

std::int64_t to_int(const std::string& s, const std::string& where) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::runtime_error(where + ": not an integer: \"" + s + "\"");
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  return out;
}

void expect_header(std::istream& in, const std::vector<std::string>& header,
                   const std::filesystem::path& path) {
  std::vector<std::string> row;
  if (!csv::read_row(in, row) || row != header)
    throw std::runtime_error(path.string() + ": missing or malformed header");
}

}  // namespace

void write_pieces(const std::vector<Piece>& pieces, const std::filesystem::path& path) {
  auto out = open_out(path);
  csv::write_row(out, {"piece_id", "doc_id", "start", "end"});
  for (const auto& p : pieces)
    csv::write_row(out, {std::to_string(p.piece_id), p.doc_id, std::to_string(p.start),
                         std::to_string(p.end)});
}

std::vector<Piece> read_pieces(const std::filesystem::path& path) {
  auto in = open_in(path);
  expect_header(in, {"piece_id", "doc_id", "start", "end"}, path);
  std::vector<Piece> pieces;
  std::vector<std::string> row;
  std::size_t rowno = 1;
  while (csv::read_row(in, row)) {
    ++rowno;
    if (row.size() == 1 && row[0].empty()) continue;
    std::string where = path.string() + ": row " + std::to_string(rowno);
    if (row.size() != 4) throw std::runtime_error(where + ": expected 4 fields");
    pieces.push_back(
        Piece{to_int(row[0], where), row[1], to_int(row[2], where), to_int(row[3], where)});
    if (pieces.back().start >= pieces.back().end)
      throw std::runtime_error(where + ": empty piece span");
  }
  return pieces;
}

void write_edges(const std::vector<ReuseEdge>& edges, const std::filesystem::path& path) {
  auto out = open_out(path);
  csv::write_row(out, {"piece_u", "piece_v"});
  for (const auto& e : edges)
    csv::write_row(out, {std::to_string(e.u), std::to_string(e.v)});
}

std::vector<ReuseEdge> read_edges(const std::filesystem::path& path) {
  auto in = open_in(path);
  expect_header(in, {"piece_u", "piece_v"}, path);
  std::vector<ReuseEdge> edges;
  std::vector<std::string> row;
  std::size_t rowno = 1;
  while (csv::read_row(in, row)) {
    ++rowno;
    if (row.size() == 1 && row[0].empty()) continue;
    std::string where = path.string() + ": row " + std::to_string(rowno);
    if (row.size() != 2) throw std::runtime_error(where + ": expected 2 fields");
    edges.push_back({to_int(row[0], where), to_int(row[1], where)});
    if (edges.back().u == edges.back().v) throw std::runtime_error(where + ": self-loop edge");
  }
  return edges;
}

void write_clusters(const ClusterAssignment& assignment, const SourceLabeling& sources,
                    const std::filesystem::path& path) {
  std::vector<std::pair<std::int64_t, std::int64_t>> rows;  // (cluster_id, piece_id)
  rows.reserve(assignment.cluster_of.size());
  for (const auto& [piece_id, cluster_id] : assignment.cluster_of)
    rows.push_back({cluster_id, piece_id});
  std::sort(rows.begin(), rows.end());

  auto out = open_out(path);
  csv::write_row(out, {"cluster_id", "piece_id", "is_source"});
  for (const auto& [cluster_id, piece_id] : rows)
    csv::write_row(out, {std::to_string(cluster_id), std::to_string(piece_id),
                         sources.is_source.at(piece_id) ? "1" : "0"});
}

std::pair<ClusterAssignment, SourceLabeling> read_clusters(const std::filesystem::path& path) {
  auto in = open_in(path);
  expect_header(in, {"cluster_id", "piece_id", "is_source"}, path);
  ClusterAssignment assignment;
  SourceLabeling sources;
  std::vector<std::string> row;
  std::size_t rowno = 1;
  std::int64_t max_cluster = -1;
  while (csv::read_row(in, row)) {
    ++rowno;
    if (row.size() == 1 && row[0].empty()) continue;
    std::string where = path.string() + ": row " + std::to_string(rowno);
    if (row.size() != 3) throw std::runtime_error(where + ": expected 3 fields");
    std::int64_t cluster = to_int(row[0], where);
    std::int64_t piece = to_int(row[1], where);
    std::int64_t flag = to_int(row[2], where);
    if (flag != 0 && flag != 1) throw std::runtime_error(where + ": is_source must be 0 or 1");
    if (assignment.cluster_of.count(piece))
      throw std::runtime_error(where + ": duplicate piece " + std::to_string(piece));
    assignment.cluster_of[piece] = cluster;
    sources.is_source[piece] = flag == 1;
    max_cluster = std::max(max_cluster, cluster);
  }
  assignment.n_clusters = max_cluster + 1;
  return {std::move(assignment), std::move(sources)};
}

}  // namespace reuse
