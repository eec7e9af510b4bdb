#include <algorithm>
#include <fstream>

#include "engine_scan_util.hpp"
#include "engines_internal.hpp"

namespace reuse::detail {

namespace {

constexpr char kMagic[4] = {'R', 'R', 'F', '1'};

// Ordered-index columns per table. docs and doc_authors are unindexed.
std::vector<std::string> declared_index_columns(const std::string& table) {
  if (table == "defrag_pieces") return {"piece_id", "doc_id"};
  if (table == "clustered_defrag_pieces" || table == "source_pieces" ||
      table == "destination_pieces")
    return {"cluster_id", "piece_id"};
  if (table == "reception_edges") return {"src_doc_id"};
  if (table == "source_piece_statistics") return {"doc_id"};
  return {};
}

struct Index {
  std::string col;
  std::vector<RowId> perm;  // row ids sorted by (key, row id)
};

class RowHandle final : public EngineBase {
 public:
  RowHandle(std::vector<Table> tables, NormalizationLevel level, bool validate) {
    if (validate) validate_level_tables(tables, level);
    kind_ = EngineKind::RowIndexed;
    level_ = level;
    tables_ = std::move(tables);
    indexes_.resize(tables_.size());
    for (std::size_t t = 0; t < tables_.size(); ++t) {
      for (const auto& col_name : declared_index_columns(tables_[t].name))
        indexes_[t].push_back(build_index(tables_[t], col_name));
    }
  }

  std::vector<std::string> table_names() const override {
    std::vector<std::string> names;
    for (const auto& t : tables_) names.push_back(t.name);
    return names;
  }

  std::size_t table_rows(std::string_view table) const override { return find(table).rows(); }

  std::vector<RowId> filter_eq_str(std::string_view table, std::string_view col,
                                   const std::string& value, QueryContext& ctx) const override {
    require_open();
    const Table& t = find(table);
    const Column& c = t.col(col);
    if (const Index* idx = index_for(table, col)) return probe_str(c, *idx, value, ctx);
    std::vector<RowId> out;
    ctx.checkpoint();
    scan_collect_str(c, 0, t.rows(), [&](const std::string& v) { return v == value; }, out, ctx);
    return out;
  }

  std::vector<RowId> filter_eq_int(std::string_view table, std::string_view col,
                                   std::int64_t value, QueryContext& ctx) const override {
    require_open();
    const Table& t = find(table);
    const Column& c = t.col(col);
    if (const Index* idx = index_for(table, col)) return probe_int(c, *idx, value, ctx);
    std::vector<RowId> out;
    ctx.checkpoint();
    scan_collect_int(c, 0, t.rows(), [&](std::int64_t v) { return v == value; }, out, ctx);
    return out;
  }

  std::vector<RowId> filter_in_int(std::string_view table, std::string_view col,
                                   const std::vector<std::int64_t>& keys,
                                   QueryContext& ctx) const override {
    require_open();
    const Table& t = find(table);
    const Column& c = t.col(col);
    std::vector<RowId> out;
    if (const Index* idx = index_for(table, col)) {
      for (std::int64_t key : keys) {
        auto range = probe_int(c, *idx, key, ctx);
        out.insert(out.end(), range.begin(), range.end());
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    ctx.checkpoint();
    scan_collect_int(c, 0, t.rows(), [&](std::int64_t v) { return sorted_contains(keys, v); },
                     out, ctx);
    return out;
  }

  std::vector<RowId> filter_in_str(std::string_view table, std::string_view col,
                                   const std::vector<std::string>& keys,
                                   QueryContext& ctx) const override {
    require_open();
    const Table& t = find(table);
    const Column& c = t.col(col);
    std::vector<RowId> out;
    if (const Index* idx = index_for(table, col)) {
      for (const auto& key : keys) {
        auto range = probe_str(c, *idx, key, ctx);
        out.insert(out.end(), range.begin(), range.end());
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    ctx.checkpoint();
    scan_collect_str(c, 0, t.rows(), [&](const std::string& v) { return sorted_contains(keys, v); },
                     out, ctx);
    return out;
  }

  std::vector<RowId> filter_not_in_int(std::string_view table, std::string_view col,
                                       const std::vector<std::int64_t>& keys,
                                       QueryContext& ctx) const override {
    require_open();
    const Table& t = find(table);
    const Column& c = t.col(col);
    std::vector<RowId> out;
    ctx.checkpoint();
    scan_collect_int(c, 0, t.rows(), [&](std::int64_t v) { return !sorted_contains(keys, v); },
                     out, ctx);
    return out;
  }

  void gather_int(std::string_view table, std::string_view col, std::span<const RowId> rows,
                  std::vector<std::int64_t>& out, QueryContext& ctx) const override {
    require_open();
    const Column& c = find(table).col(col);
    out.clear();
    out.reserve(rows.size());
    for (RowId r : rows) {
      ctx.tick();
      out.push_back(c.ints[r]);
    }
  }

  void gather_str(std::string_view table, std::string_view col, std::span<const RowId> rows,
                  std::vector<std::string>& out, QueryContext& ctx) const override {
    require_open();
    const Column& c = find(table).col(col);
    out.clear();
    out.reserve(rows.size());
    for (RowId r : rows) {
      ctx.tick();
      out.push_back(c.strs[r]);
    }
  }

  Table materialize_table(std::string_view table) const override { return find(table); }

  std::vector<std::string> index_string_keys(std::string_view table,
                                             std::string_view col) const override {
    const Index* idx = index_for(table, col);
    if (!idx) return {};
    const Column& c = find(table).col(col);
    std::vector<std::string> keys;
    for (RowId r : idx->perm) {
      std::string key = c.type == ColumnType::String ? c.strs[r] : std::to_string(c.ints[r]);
      if (keys.empty() || keys.back() != key) keys.push_back(std::move(key));
    }
    return keys;
  }

  void serialize_table(const std::string& name, io::Writer& w) const override;

 private:
  const Table& find(std::string_view name) const {
    for (const auto& t : tables_)
      if (t.name == name) return t;
    throw std::runtime_error("no such table: " + std::string(name));
  }

  const Index* index_for(std::string_view table, std::string_view col) const {
    for (std::size_t t = 0; t < tables_.size(); ++t) {
      if (tables_[t].name != table) continue;
      for (const auto& idx : indexes_[t])
        if (idx.col == col) return &idx;
    }
    return nullptr;
  }

  static Index build_index(const Table& t, const std::string& col_name) {
    const Column& c = t.col(col_name);
    Index idx;
    idx.col = col_name;
    idx.perm.resize(t.rows());
    for (std::size_t i = 0; i < t.rows(); ++i) idx.perm[i] = static_cast<RowId>(i);
    if (c.type == ColumnType::Int64) {
      std::sort(idx.perm.begin(), idx.perm.end(), [&](RowId a, RowId b) {
        return c.ints[a] != c.ints[b] ? c.ints[a] < c.ints[b] : a < b;
      });
    } else {
      std::sort(idx.perm.begin(), idx.perm.end(), [&](RowId a, RowId b) {
        return c.strs[a] != c.strs[b] ? c.strs[a] < c.strs[b] : a < b;
      });
    }
    return idx;
  }

  static std::vector<RowId> probe_int(const Column& c, const Index& idx, std::int64_t value,
                                      QueryContext& ctx) {
    ctx.checkpoint();
    ++ctx.stats.index_probes;
    auto lo = std::lower_bound(idx.perm.begin(), idx.perm.end(), value,
                               [&](RowId r, std::int64_t v) { return c.ints[r] < v; });
    auto hi = std::upper_bound(lo, idx.perm.end(), value,
                               [&](std::int64_t v, RowId r) { return v < c.ints[r]; });
    return {lo, hi};
  }

  static std::vector<RowId> probe_str(const Column& c, const Index& idx, const std::string& value,
                                      QueryContext& ctx) {
    ctx.checkpoint();
    ++ctx.stats.index_probes;
    auto lo = std::lower_bound(idx.perm.begin(), idx.perm.end(), value,
                               [&](RowId r, const std::string& v) { return c.strs[r] < v; });
    auto hi = std::upper_bound(lo, idx.perm.end(), value,
                               [&](const std::string& v, RowId r) { return v < c.strs[r]; });
    return {lo, hi};
  }

  std::vector<Table> tables_;
  std::vector<std::vector<Index>> indexes_;
};

void write_schema(const Table& t, io::Writer& w) {
  w.u32(static_cast<std::uint32_t>(t.columns.size()));
  for (const auto& c : t.columns) {
    w.str(c.name);
    w.u8(c.type == ColumnType::Int64 ? 0 : 1);
  }
  w.u64(t.rows());
}

}  // namespace

void RowHandle::serialize_table(const std::string& name, io::Writer& w) const {
  const Table& t = find(name);
  w.bytes(kMagic, 4);
  write_schema(t, w);

  // fixed record layout: string columns padded to their widest value
  std::vector<std::uint32_t> widths(t.columns.size(), 0);
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (t.columns[c].type != ColumnType::String) continue;
    for (const auto& s : t.columns[c].strs)
      widths[c] = std::max(widths[c], static_cast<std::uint32_t>(s.size()));
    w.u32(widths[c]);
  }

  std::string pad;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const Column& col = t.columns[c];
      if (col.type == ColumnType::Int64) {
        w.i64(col.ints[r]);
      } else {
        const std::string& s = col.strs[r];
        w.u32(static_cast<std::uint32_t>(s.size()));
        w.bytes(s.data(), s.size());
        pad.assign(widths[c] - s.size(), '\0');
        w.bytes(pad.data(), pad.size());
      }
    }
  }

  // index segments
  std::size_t ti = 0;
  while (tables_[ti].name != name) ++ti;
  w.u32(static_cast<std::uint32_t>(indexes_[ti].size()));
  for (const auto& idx : indexes_[ti]) {
    w.str(idx.col);
    w.u64(idx.perm.size());
    for (RowId r : idx.perm) w.u32(r);
  }
}

std::unique_ptr<EngineBase> make_row_handle(std::vector<Table> tables, NormalizationLevel level) {
  return std::make_unique<RowHandle>(std::move(tables), level, /*validate=*/true);
}

std::unique_ptr<EngineBase> open_row_table_files(const std::filesystem::path& dir,
                                                 const std::vector<std::string>& names,
                                                 NormalizationLevel level) {
  std::vector<Table> tables;
  for (const auto& name : names) {
    auto path = dir / (name + ".tbl");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing table file: " + path.string());
    io::Reader r(in, path.string());

    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
      throw std::runtime_error("bad magic in " + path.string());

    Table t;
    t.name = name;
    std::uint32_t n_cols = r.u32();
    for (std::uint32_t c = 0; c < n_cols; ++c) {
      std::string col_name = r.str();
      t.columns.push_back(r.u8() == 0 ? Column::int64(col_name) : Column::string(col_name));
    }
    std::uint64_t n_rows = r.u64();

    std::vector<std::uint32_t> widths(n_cols, 0);
    for (std::uint32_t c = 0; c < n_cols; ++c)
      if (t.columns[c].type == ColumnType::String) widths[c] = r.u32();

    std::string buf;
    for (std::uint64_t row = 0; row < n_rows; ++row) {
      for (std::uint32_t c = 0; c < n_cols; ++c) {
        if (t.columns[c].type == ColumnType::Int64) {
          t.columns[c].ints.push_back(r.i64());
        } else {
          std::uint32_t len = r.u32();
          buf.resize(widths[c]);
          if (widths[c]) r.bytes(buf.data(), widths[c]);
          t.columns[c].strs.push_back(buf.substr(0, len));
        }
      }
    }
    // index segments are rebuilt deterministically by the constructor; the
    // persisted copies just need skipping
    std::uint32_t n_indexes = r.u32();
    for (std::uint32_t i = 0; i < n_indexes; ++i) {
      r.str();
      std::uint64_t n = r.u64();
      for (std::uint64_t k = 0; k < n; ++k) r.u32();
    }
    tables.push_back(std::move(t));
  }
  return std::make_unique<RowHandle>(std::move(tables), level, /*validate=*/true);
}

}  // namespace reuse::detail
