#include <algorithm>
#include <cstring>
#include <fstream>
#include <limits>

#include "engines_internal.hpp"

namespace reuse::detail {

namespace {

constexpr char kMagic[4] = {'R', 'C', 'F', '1'};
constexpr std::size_t kBlockRows = 65536;

enum Encoding : std::uint8_t {
  kPlain = 0,  // raw int64 values
  kDict = 1,   // fixed-width dictionary codes
  kDelta = 2,  // first value + varint deltas (non-decreasing blocks)
  kRle = 3,    // (zigzag varint value, varint count) runs
};

void put_u8(std::vector<std::uint8_t>& buf, std::uint8_t v) { buf.push_back(v); }

void put_varint(std::vector<std::uint8_t>& buf, std::uint64_t v) {
  while (v >= 0x80) {
    buf.push_back(static_cast<std::uint8_t>(v) | 0x80);
    v >>= 7;
  }
  buf.push_back(static_cast<std::uint8_t>(v));
}

void put_i64(std::vector<std::uint8_t>& buf, std::int64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

struct ByteCursor {
  const std::uint8_t* p;
  const std::uint8_t* end;

  std::uint8_t u8() { return *p++; }
  std::uint64_t varint() {
    std::uint64_t v = 0;
    int shift = 0;
    while (true) {
      std::uint8_t b = u8();
      v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
      if (!(b & 0x80)) return v;
      shift += 7;
    }
  }
  std::int64_t i64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return static_cast<std::int64_t>(v);
  }
};

struct Block {
  std::uint8_t encoding = kPlain;
  std::uint32_t count = 0;
  std::vector<std::uint8_t> payload;
  std::int64_t min = 0;  // zone map over values (codes for string columns)
  std::int64_t max = 0;
};

Block encode_block(const std::int64_t* values, std::size_t n, bool string_codes,
                   std::size_t dict_size) {
  Block b;
  b.count = static_cast<std::uint32_t>(n);
  b.min = std::numeric_limits<std::int64_t>::max();
  b.max = std::numeric_limits<std::int64_t>::min();
  std::size_t runs = n ? 1 : 0;
  bool sorted = true;
  for (std::size_t i = 0; i < n; ++i) {
    b.min = std::min(b.min, values[i]);
    b.max = std::max(b.max, values[i]);
    if (i) {
      if (values[i] != values[i - 1]) ++runs;
      if (values[i] < values[i - 1]) sorted = false;
    }
  }

  if (runs * 4 <= n) {
    b.encoding = kRle;
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j < n && values[j] == values[i]) ++j;
      put_varint(b.payload, io::zigzag(values[i]));
      put_varint(b.payload, j - i);
      i = j;
    }
  } else if (sorted && n > 0) {
    b.encoding = kDelta;
    put_i64(b.payload, values[0]);
    for (std::size_t i = 1; i < n; ++i)
      put_varint(b.payload, static_cast<std::uint64_t>(values[i] - values[i - 1]));
  } else if (string_codes) {
    b.encoding = kDict;
    int width = dict_size <= 0xFF ? 1 : dict_size <= 0xFFFF ? 2 : 4;
    for (std::size_t i = 0; i < n; ++i) {
      auto v = static_cast<std::uint64_t>(values[i]);
      for (int k = 0; k < width; ++k) put_u8(b.payload, static_cast<std::uint8_t>(v >> (8 * k)));
    }
  } else {
    b.encoding = kPlain;
    for (std::size_t i = 0; i < n; ++i) put_i64(b.payload, values[i]);
  }
  return b;
}

void decode_block(const Block& b, bool string_codes, std::size_t dict_size,
                  std::vector<std::int64_t>& out) {
  out.clear();
  out.reserve(b.count);
  ByteCursor cur{b.payload.data(), b.payload.data() + b.payload.size()};
  switch (b.encoding) {
    case kPlain:
      for (std::uint32_t i = 0; i < b.count; ++i) out.push_back(cur.i64());
      break;
    case kDict: {
      int width = dict_size <= 0xFF ? 1 : dict_size <= 0xFFFF ? 2 : 4;
      for (std::uint32_t i = 0; i < b.count; ++i) {
        std::uint64_t v = 0;
        for (int k = 0; k < width; ++k) v |= static_cast<std::uint64_t>(cur.u8()) << (8 * k);
        out.push_back(static_cast<std::int64_t>(v));
      }
      break;
    }
    case kDelta: {
      if (b.count == 0) break;
      std::int64_t v = cur.i64();
      out.push_back(v);
      for (std::uint32_t i = 1; i < b.count; ++i) {
        v += static_cast<std::int64_t>(cur.varint());
        out.push_back(v);
      }
      break;
    }
    case kRle: {
      while (out.size() < b.count) {
        std::int64_t v = io::unzigzag(cur.varint());
        std::uint64_t run = cur.varint();
        out.insert(out.end(), run, v);
      }
      break;
    }
    default:
      throw std::runtime_error("unknown block encoding");
  }
  (void)string_codes;
}

struct ColStore {
  std::string name;
  ColumnType type = ColumnType::Int64;
  std::vector<std::string> dict;  // sorted; codes preserve value order
  std::vector<Block> blocks;
};

struct TableStore {
  std::string name;
  std::uint64_t rows = 0;
  std::vector<ColStore> cols;
};

ColStore encode_column(const Column& col) {
  ColStore cs;
  cs.name = col.name;
  cs.type = col.type;

  std::vector<std::int64_t> values;
  if (col.type == ColumnType::String) {
    cs.dict = col.strs;
    std::sort(cs.dict.begin(), cs.dict.end());
    cs.dict.erase(std::unique(cs.dict.begin(), cs.dict.end()), cs.dict.end());
    values.reserve(col.strs.size());
    for (const auto& s : col.strs)
      values.push_back(std::lower_bound(cs.dict.begin(), cs.dict.end(), s) - cs.dict.begin());
  } else {
    values = col.ints;
  }

  for (std::size_t off = 0; off < values.size(); off += kBlockRows) {
    std::size_t n = std::min(kBlockRows, values.size() - off);
    cs.blocks.push_back(
        encode_block(values.data() + off, n, col.type == ColumnType::String, cs.dict.size()));
  }
  return cs;
}

// No secondary indexes: point predicates run as block scans with zone-map
// pruning, mirroring a compressed column store.
class ColumnarHandle final : public EngineBase {
 public:
  ColumnarHandle(std::vector<TableStore> stores, NormalizationLevel level) {
    kind_ = EngineKind::Columnar;
    level_ = level;
    stores_ = std::move(stores);
  }

  static std::unique_ptr<ColumnarHandle> from_tables(std::vector<Table> tables,
                                                     NormalizationLevel level) {
    validate_level_tables(tables, level);
    std::vector<TableStore> stores;
    stores.reserve(tables.size());
    for (const auto& t : tables) {
      TableStore ts;
      ts.name = t.name;
      ts.rows = t.rows();
      for (const auto& c : t.columns) ts.cols.push_back(encode_column(c));
      stores.push_back(std::move(ts));
    }
    return std::make_unique<ColumnarHandle>(std::move(stores), level);
  }

  std::vector<std::string> table_names() const override {
    std::vector<std::string> names;
    for (const auto& t : stores_) names.push_back(t.name);
    return names;
  }

  std::size_t table_rows(std::string_view table) const override { return find(table).rows; }

  std::vector<RowId> filter_eq_str(std::string_view table, std::string_view col,
                                   const std::string& value, QueryContext& ctx) const override {
    require_open();
    const ColStore& c = find_col(table, col);
    auto it = std::lower_bound(c.dict.begin(), c.dict.end(), value);
    if (it == c.dict.end() || *it != value) return {};
    auto code = static_cast<std::int64_t>(it - c.dict.begin());
    return filter_codes(c, ctx, [code](std::int64_t v) { return v == code; }, code, code);
  }

  std::vector<RowId> filter_eq_int(std::string_view table, std::string_view col,
                                   std::int64_t value, QueryContext& ctx) const override {
    require_open();
    const ColStore& c = find_col(table, col);
    return filter_codes(c, ctx, [value](std::int64_t v) { return v == value; }, value, value);
  }

  std::vector<RowId> filter_in_int(std::string_view table, std::string_view col,
                                   const std::vector<std::int64_t>& keys,
                                   QueryContext& ctx) const override {
    require_open();
    const ColStore& c = find_col(table, col);
    return filter_keys(c, ctx, keys);
  }

  std::vector<RowId> filter_in_str(std::string_view table, std::string_view col,
                                   const std::vector<std::string>& keys,
                                   QueryContext& ctx) const override {
    require_open();
    const ColStore& c = find_col(table, col);
    std::vector<std::int64_t> codes;
    codes.reserve(keys.size());
    for (const auto& k : keys) {
      auto it = std::lower_bound(c.dict.begin(), c.dict.end(), k);
      if (it != c.dict.end() && *it == k) codes.push_back(it - c.dict.begin());
    }
    return filter_keys(c, ctx, codes);
  }

  std::vector<RowId> filter_not_in_int(std::string_view table, std::string_view col,
                                       const std::vector<std::int64_t>& keys,
                                       QueryContext& ctx) const override {
    require_open();
    const ColStore& c = find_col(table, col);
    // complement predicates defeat zone maps: every block must be decoded
    std::vector<RowId> out;
    std::vector<std::int64_t> scratch;
    std::size_t base = 0;
    for (const auto& b : c.blocks) {
      ctx.checkpoint();
      ++ctx.stats.blocks_scanned;
      decode_block(b, c.type == ColumnType::String, c.dict.size(), scratch);
      for (std::size_t i = 0; i < scratch.size(); ++i) {
        ctx.tick();
        ++ctx.stats.rows_visited;
        if (!std::binary_search(keys.begin(), keys.end(), scratch[i]))
          out.push_back(static_cast<RowId>(base + i));
      }
      base += b.count;
    }
    return out;
  }

  void gather_int(std::string_view table, std::string_view col, std::span<const RowId> rows,
                  std::vector<std::int64_t>& out, QueryContext& ctx) const override {
    require_open();
    const ColStore& c = find_col(table, col);
    out.clear();
    out.reserve(rows.size());
    std::vector<std::int64_t> scratch;
    std::size_t cached_block = SIZE_MAX;
    for (RowId r : rows) {
      ctx.tick();
      std::size_t blk = r / kBlockRows;
      if (blk != cached_block) {
        ctx.checkpoint();
        ++ctx.stats.blocks_scanned;
        decode_block(c.blocks[blk], c.type == ColumnType::String, c.dict.size(), scratch);
        cached_block = blk;
      }
      out.push_back(scratch[r % kBlockRows]);
    }
  }

  void gather_str(std::string_view table, std::string_view col, std::span<const RowId> rows,
                  std::vector<std::string>& out, QueryContext& ctx) const override {
    require_open();
    const ColStore& c = find_col(table, col);
    out.clear();
    out.reserve(rows.size());
    std::vector<std::int64_t> scratch;
    std::size_t cached_block = SIZE_MAX;
    for (RowId r : rows) {
      ctx.tick();
      std::size_t blk = r / kBlockRows;
      if (blk != cached_block) {
        ctx.checkpoint();
        ++ctx.stats.blocks_scanned;
        decode_block(c.blocks[blk], true, c.dict.size(), scratch);
        cached_block = blk;
      }
      out.push_back(c.dict[static_cast<std::size_t>(scratch[r % kBlockRows])]);
    }
  }

  Table materialize_table(std::string_view table) const override {
    const TableStore& ts = find(table);
    Table t;
    t.name = ts.name;
    std::vector<std::int64_t> scratch;
    for (const auto& c : ts.cols) {
      Column col = c.type == ColumnType::Int64 ? Column::int64(c.name) : Column::string(c.name);
      for (const auto& b : c.blocks) {
        decode_block(b, c.type == ColumnType::String, c.dict.size(), scratch);
        if (c.type == ColumnType::Int64) {
          col.ints.insert(col.ints.end(), scratch.begin(), scratch.end());
        } else {
          for (auto code : scratch) col.strs.push_back(c.dict[static_cast<std::size_t>(code)]);
        }
      }
      t.columns.push_back(std::move(col));
    }
    return t;
  }

  void serialize_table(const std::string& name, io::Writer& w) const override {
    const TableStore& ts = find(name);
    w.bytes(kMagic, 4);
    w.u32(static_cast<std::uint32_t>(ts.cols.size()));
    for (const auto& c : ts.cols) {
      w.str(c.name);
      w.u8(c.type == ColumnType::Int64 ? 0 : 1);
    }
    w.u64(ts.rows);
    for (const auto& c : ts.cols) {
      if (c.type == ColumnType::String) {
        w.u32(static_cast<std::uint32_t>(c.dict.size()));
        for (const auto& s : c.dict) w.str(s);
      }
      w.u32(static_cast<std::uint32_t>(c.blocks.size()));
      for (const auto& b : c.blocks) {
        w.u8(b.encoding);
        w.u32(b.count);
        w.u64(b.payload.size());
        w.bytes(b.payload.data(), b.payload.size());
      }
      // zone-map segment
      for (const auto& b : c.blocks) {
        w.i64(b.min);
        w.i64(b.max);
      }
    }
  }

 private:
  const TableStore& find(std::string_view name) const {
    for (const auto& t : stores_)
      if (t.name == name) return t;
    throw std::runtime_error("no such table: " + std::string(name));
  }

  const ColStore& find_col(std::string_view table, std::string_view col) const {
    for (const auto& c : find(table).cols)
      if (c.name == col) return c;
    throw std::runtime_error("table " + std::string(table) + " has no column " +
                             std::string(col));
  }

  template <typename Pred>
  std::vector<RowId> filter_codes(const ColStore& c, QueryContext& ctx, Pred pred,
                                  std::int64_t lo, std::int64_t hi) const {
    std::vector<RowId> out;
    std::vector<std::int64_t> scratch;
    std::size_t base = 0;
    for (const auto& b : c.blocks) {
      ctx.checkpoint();
      if (ctx.use_zone_maps && (hi < b.min || lo > b.max)) {
        ++ctx.stats.blocks_pruned;
        base += b.count;
        continue;
      }
      ++ctx.stats.blocks_scanned;
      decode_block(b, c.type == ColumnType::String, c.dict.size(), scratch);
      for (std::size_t i = 0; i < scratch.size(); ++i) {
        ctx.tick();
        ++ctx.stats.rows_visited;
        if (pred(scratch[i])) out.push_back(static_cast<RowId>(base + i));
      }
      base += b.count;
    }
    return out;
  }

  std::vector<RowId> filter_keys(const ColStore& c, QueryContext& ctx,
                                 const std::vector<std::int64_t>& keys) const {
    std::vector<RowId> out;
    if (keys.empty()) return out;
    std::vector<std::int64_t> scratch;
    std::size_t base = 0;
    for (const auto& b : c.blocks) {
      ctx.checkpoint();
      if (ctx.use_zone_maps) {
        auto it = std::lower_bound(keys.begin(), keys.end(), b.min);
        if (it == keys.end() || *it > b.max) {
          ++ctx.stats.blocks_pruned;
          base += b.count;
          continue;
        }
      }
      ++ctx.stats.blocks_scanned;
      decode_block(b, c.type == ColumnType::String, c.dict.size(), scratch);
      for (std::size_t i = 0; i < scratch.size(); ++i) {
        ctx.tick();
        ++ctx.stats.rows_visited;
        if (std::binary_search(keys.begin(), keys.end(), scratch[i]))
          out.push_back(static_cast<RowId>(base + i));
      }
      base += b.count;
    }
    return out;
  }

  std::vector<TableStore> stores_;
};

}  // namespace

std::unique_ptr<EngineBase> make_columnar_handle(std::vector<Table> tables,
                                                 NormalizationLevel level) {
  return ColumnarHandle::from_tables(std::move(tables), level);
}

std::unique_ptr<EngineBase> open_columnar_table_files(const std::filesystem::path& dir,
                                                      const std::vector<std::string>& names,
                                                      NormalizationLevel level) {
  std::vector<TableStore> stores;
  for (const auto& name : names) {
    auto path = dir / (name + ".tbl");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing table file: " + path.string());
    io::Reader r(in, path.string());

    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
      throw std::runtime_error("bad magic in " + path.string());

    TableStore ts;
    ts.name = name;
    std::uint32_t n_cols = r.u32();
    std::vector<std::pair<std::string, ColumnType>> schema;
    for (std::uint32_t c = 0; c < n_cols; ++c) {
      std::string col_name = r.str();
      schema.push_back({col_name, r.u8() == 0 ? ColumnType::Int64 : ColumnType::String});
    }
    ts.rows = r.u64();
    for (std::uint32_t c = 0; c < n_cols; ++c) {
      ColStore cs;
      cs.name = schema[c].first;
      cs.type = schema[c].second;
      if (cs.type == ColumnType::String) {
        std::uint32_t dict_size = r.u32();
        cs.dict.reserve(dict_size);
        for (std::uint32_t i = 0; i < dict_size; ++i) cs.dict.push_back(r.str());
      }
      std::uint32_t n_blocks = r.u32();
      cs.blocks.resize(n_blocks);
      for (auto& b : cs.blocks) {
        b.encoding = r.u8();
        b.count = r.u32();
        std::uint64_t len = r.u64();
        b.payload.resize(len);
        if (len) r.bytes(b.payload.data(), len);
      }
      for (auto& b : cs.blocks) {
        b.min = r.i64();
        b.max = r.i64();
      }
      ts.cols.push_back(std::move(cs));
    }
    stores.push_back(std::move(ts));
  }
  return std::make_unique<ColumnarHandle>(std::move(stores), level);
}

}  // namespace reuse::detail
