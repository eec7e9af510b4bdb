#include "reuse/tables_io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "reuse/csv.hpp"
#include "reuse/date.hpp"

namespace reuse {

namespace {

// Column layout per table name; anything else is rejected.
struct TableSpec {
  const char* name;
  std::vector<std::pair<const char*, ColumnType>> cols;
};

const std::vector<TableSpec>& table_specs() {
  static const std::vector<TableSpec> specs = {
      {"docs",
       {{"doc_id", ColumnType::String},
        {"collection", ColumnType::String},
        {"title", ColumnType::String},
        {"pub_date", ColumnType::String},
        {"edition_id", ColumnType::String}}},
      {"doc_authors", {{"doc_id", ColumnType::String}, {"author_id", ColumnType::String}}},
      {"defrag_pieces",
       {{"piece_id", ColumnType::Int64},
        {"doc_id", ColumnType::String},
        {"start", ColumnType::Int64},
        {"end", ColumnType::Int64}}},
      {"clustered_defrag_pieces",
       {{"cluster_id", ColumnType::Int64}, {"piece_id", ColumnType::Int64}}},
      {"source_pieces", {{"cluster_id", ColumnType::Int64}, {"piece_id", ColumnType::Int64}}},
      {"destination_pieces", {{"cluster_id", ColumnType::Int64}, {"piece_id", ColumnType::Int64}}},
      {"reception_edges",
       {{"src_doc_id", ColumnType::String},
        {"src_start", ColumnType::Int64},
        {"src_end", ColumnType::Int64},
        {"dst_doc_id", ColumnType::String},
        {"dst_start", ColumnType::Int64},
        {"dst_end", ColumnType::Int64}}},
      {"source_piece_statistics",
       {{"piece_id", ColumnType::Int64},
        {"cluster_id", ColumnType::Int64},
        {"doc_id", ColumnType::String},
        {"start", ColumnType::Int64},
        {"end", ColumnType::Int64},
        {"piece_length", ColumnType::Int64},
        {"n_reuses", ColumnType::Int64}}},
  };
  return specs;
}

const TableSpec& spec_for(const std::string& name) {
  for (const auto& s : table_specs())
    if (name == s.name) return s;
  throw std::runtime_error("unknown table name: " + name);
}

std::int64_t to_int(const std::string& s, const std::string& where) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::runtime_error(where + ": not an integer: \"" + s + "\"");
  return v;
}

}  // namespace

void write_dataset_csv(const Dataset& dataset, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream marker(dir / "level", std::ios::trunc);
    if (!marker) throw std::runtime_error("cannot write level marker in " + dir.string());
    marker << to_string(dataset.level) << '\n';
  }
  for (const auto& t : dataset.tables) {
    spec_for(t.name);
    std::ofstream out(dir / (t.name + ".csv"), std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write table file for " + t.name);
    std::vector<std::string> header;
    for (const auto& c : t.columns) header.push_back(c.name);
    csv::write_row(out, header);
    std::vector<std::string> row(t.columns.size());
    for (std::size_t r = 0; r < t.rows(); ++r) {
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        const auto& col = t.columns[c];
        row[c] = col.type == ColumnType::Int64 ? std::to_string(col.ints[r]) : col.strs[r];
      }
      csv::write_row(out, row);
    }
  }
}

Dataset read_dataset_csv(const std::filesystem::path& dir) {
  Dataset ds;
  {
    std::ifstream marker(dir / "level");
    if (!marker)
      throw std::runtime_error("missing level marker file: " + (dir / "level").string());
    std::string level;
    marker >> level;
    ds.level = parse_level(level);
  }

  for (const auto& name : level_table_names(ds.level)) {
    auto path = dir / (name + ".csv");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing table file: " + path.string());
    const TableSpec& spec = spec_for(name);

    Table t;
    t.name = name;
    for (const auto& [col_name, type] : spec.cols)
      t.columns.push_back(type == ColumnType::Int64 ? Column::int64(col_name)
                                                    : Column::string(col_name));

    std::vector<std::string> row;
    if (!csv::read_row(in, row))
      throw std::runtime_error(path.string() + ": missing header");
    {
      std::vector<std::string> expected;
      for (const auto& c : t.columns) expected.push_back(c.name);
      if (row != expected) throw std::runtime_error(path.string() + ": malformed header");
    }
    std::size_t rowno = 1;
    while (csv::read_row(in, row)) {
      ++rowno;
      if (row.size() == 1 && row[0].empty()) continue;
      std::string where = path.string() + ": row " + std::to_string(rowno);
      if (row.size() != t.columns.size())
        throw std::runtime_error(where + ": wrong field count");
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (t.columns[c].type == ColumnType::Int64)
          t.columns[c].ints.push_back(to_int(row[c], where));
        else
          t.columns[c].strs.push_back(row[c]);
      }
    }
    ds.tables.push_back(std::move(t));
  }
  return ds;
}

StandardTables standard_from_dataset(const Dataset& dataset) {
  StandardTables t;

  const Table& docs = dataset.table("docs");
  for (std::size_t r = 0; r < docs.rows(); ++r) {
    t.docs.push_back({docs.col("doc_id").strs[r], docs.col("collection").strs[r],
                      docs.col("title").strs[r], parse_pub_date(docs.col("pub_date").strs[r]),
                      docs.col("edition_id").strs[r]});
  }
  const Table& authors = dataset.table("doc_authors");
  for (std::size_t r = 0; r < authors.rows(); ++r)
    t.doc_authors.push_back({authors.col("doc_id").strs[r], authors.col("author_id").strs[r]});

  const Table& pieces = dataset.table("defrag_pieces");
  for (std::size_t r = 0; r < pieces.rows(); ++r)
    t.defrag_pieces.push_back(Piece{pieces.col("piece_id").ints[r], pieces.col("doc_id").strs[r],
                                    pieces.col("start").ints[r], pieces.col("end").ints[r]});

  auto members = [&](const char* name) {
    std::vector<StandardTables::MemberRow> rows;
    const Table& tbl = dataset.table(name);
    for (std::size_t r = 0; r < tbl.rows(); ++r)
      rows.push_back({tbl.col("cluster_id").ints[r], tbl.col("piece_id").ints[r]});
    return rows;
  };
  t.clustered_defrag_pieces = members("clustered_defrag_pieces");
  t.source_pieces = members("source_pieces");
  t.reindex();
  return t;
}

}  // namespace reuse
