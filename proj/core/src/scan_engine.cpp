#include <algorithm>
#include <cstring>
#include <fstream>
#include <thread>

#include "engine_scan_util.hpp"
#include "engines_internal.hpp"

namespace reuse::detail {

namespace {

constexpr char kMagic[4] = {'R', 'S', 'F', '1'};
constexpr std::size_t kPartitions = 16;

// Every query reads all partitions; the only structure is the partition
// split itself, scanned in parallel by a fixed-size worker pool.
class ScanHandle final : public EngineBase {
 public:
  ScanHandle(std::vector<Table> tables, NormalizationLevel level, const EngineOptions& options,
             bool validate)
      : workers_(std::max(1, options.scan_workers)) {
    if (validate) validate_level_tables(tables, level);
    kind_ = EngineKind::Scan;
    level_ = level;
    tables_ = std::move(tables);
  }

  std::vector<std::string> table_names() const override {
    std::vector<std::string> names;
    for (const auto& t : tables_) names.push_back(t.name);
    return names;
  }

  std::size_t table_rows(std::string_view table) const override { return find(table).rows(); }

  std::vector<RowId> filter_eq_str(std::string_view table, std::string_view col,
                                   const std::string& value, QueryContext& ctx) const override {
    const Column& c = find(table).col(col);
    return parallel_scan(find(table), ctx, [&](std::size_t begin, std::size_t end,
                                               std::vector<RowId>& out, const QueryContext& wctx) {
      scan_collect_str(c, begin, end, [&](const std::string& v) { return v == value; }, out, wctx);
    });
  }

  std::vector<RowId> filter_eq_int(std::string_view table, std::string_view col,
                                   std::int64_t value, QueryContext& ctx) const override {
    const Column& c = find(table).col(col);
    return parallel_scan(find(table), ctx, [&](std::size_t begin, std::size_t end,
                                               std::vector<RowId>& out, const QueryContext& wctx) {
      scan_collect_int(c, begin, end, [&](std::int64_t v) { return v == value; }, out, wctx);
    });
  }

  std::vector<RowId> filter_in_int(std::string_view table, std::string_view col,
                                   const std::vector<std::int64_t>& keys,
                                   QueryContext& ctx) const override {
    const Column& c = find(table).col(col);
    return parallel_scan(find(table), ctx, [&](std::size_t begin, std::size_t end,
                                               std::vector<RowId>& out, const QueryContext& wctx) {
      scan_collect_int(c, begin, end, [&](std::int64_t v) { return sorted_contains(keys, v); },
                       out, wctx);
    });
  }

  std::vector<RowId> filter_in_str(std::string_view table, std::string_view col,
                                   const std::vector<std::string>& keys,
                                   QueryContext& ctx) const override {
    const Column& c = find(table).col(col);
    return parallel_scan(find(table), ctx, [&](std::size_t begin, std::size_t end,
                                               std::vector<RowId>& out, const QueryContext& wctx) {
      scan_collect_str(c, begin, end,
                       [&](const std::string& v) { return sorted_contains(keys, v); }, out, wctx);
    });
  }

  std::vector<RowId> filter_not_in_int(std::string_view table, std::string_view col,
                                       const std::vector<std::int64_t>& keys,
                                       QueryContext& ctx) const override {
    const Column& c = find(table).col(col);
    return parallel_scan(find(table), ctx, [&](std::size_t begin, std::size_t end,
                                               std::vector<RowId>& out, const QueryContext& wctx) {
      scan_collect_int(c, begin, end, [&](std::int64_t v) { return !sorted_contains(keys, v); },
                       out, wctx);
    });
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

  void serialize_table(const std::string& name, io::Writer& w) const override;

 private:
  const Table& find(std::string_view name) const {
    for (const auto& t : tables_)
      if (t.name == name) return t;
    throw std::runtime_error("no such table: " + std::string(name));
  }

  static std::pair<std::size_t, std::size_t> partition_range(std::size_t rows, std::size_t p) {
    return {rows * p / kPartitions, rows * (p + 1) / kPartitions};
  }

  // Runs `body(begin, end, out, ctx)` over all 16 partitions with a fixed
  // worker pool; results concatenate in partition order so output is
  // deterministic regardless of scheduling.
  template <typename Body>
  std::vector<RowId> parallel_scan(const Table& t, QueryContext& ctx, Body body) const {
    require_open();
    ctx.checkpoint();
    struct PartOut {
      std::vector<RowId> rows;
      QueryStats stats;
      std::exception_ptr error;
    };
    std::vector<PartOut> parts(kPartitions);

    auto run_partition = [&](std::size_t p) {
      QueryContext wctx;
      wctx.clock = ctx.clock;
      wctx.deadline = ctx.deadline;
      wctx.use_zone_maps = ctx.use_zone_maps;
      try {
        wctx.checkpoint();
        auto [begin, end] = partition_range(t.rows(), p);
        body(begin, end, parts[p].rows, wctx);
        ++wctx.stats.partitions_scanned;
      } catch (...) {
        parts[p].error = std::current_exception();
      }
      parts[p].stats = wctx.stats;
    };

    if (workers_ <= 1) {
      for (std::size_t p = 0; p < kPartitions; ++p) run_partition(p);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers_));
      for (int wkr = 0; wkr < workers_; ++wkr) {
        pool.emplace_back([&, wkr] {
          for (std::size_t p = static_cast<std::size_t>(wkr); p < kPartitions;
               p += static_cast<std::size_t>(workers_))
            run_partition(p);
        });
      }
      for (auto& th : pool) th.join();
    }

    std::vector<RowId> out;
    std::size_t total = 0;
    for (const auto& part : parts) total += part.rows.size();
    out.reserve(total);
    for (auto& part : parts) {
      if (part.error) std::rethrow_exception(part.error);
      ctx.stats.rows_visited += part.stats.rows_visited;
      ctx.stats.partitions_scanned += part.stats.partitions_scanned;
      out.insert(out.end(), part.rows.begin(), part.rows.end());
    }
    return out;
  }

  std::vector<Table> tables_;
  int workers_;
};

}  // namespace

void ScanHandle::serialize_table(const std::string& name, io::Writer& w) const {
  const Table& t = find(name);
  w.bytes(kMagic, 4);
  w.u32(static_cast<std::uint32_t>(t.columns.size()));
  for (const auto& c : t.columns) {
    w.str(c.name);
    w.u8(c.type == ColumnType::Int64 ? 0 : 1);
  }
  w.u64(t.rows());
  w.u32(kPartitions);

  // partition directory: row range + byte length of each uncompressed block
  for (std::size_t p = 0; p < kPartitions; ++p) {
    auto [begin, end] = partition_range(t.rows(), p);
    std::uint64_t bytes = 0;
    for (const auto& c : t.columns) {
      if (c.type == ColumnType::Int64) {
        bytes += 8 * (end - begin);
      } else {
        for (std::size_t r = begin; r < end; ++r) bytes += 4 + c.strs[r].size();
      }
    }
    w.u64(begin);
    w.u64(end - begin);
    w.u64(bytes);
  }
  for (std::size_t p = 0; p < kPartitions; ++p) {
    auto [begin, end] = partition_range(t.rows(), p);
    for (std::size_t r = begin; r < end; ++r) {
      for (const auto& c : t.columns) {
        if (c.type == ColumnType::Int64) w.i64(c.ints[r]);
        else w.str(c.strs[r]);
      }
    }
  }
}

std::unique_ptr<EngineBase> make_scan_handle(std::vector<Table> tables, NormalizationLevel level,
                                             const EngineOptions& options) {
  return std::make_unique<ScanHandle>(std::move(tables), level, options, /*validate=*/true);
}

std::unique_ptr<EngineBase> open_scan_table_files(const std::filesystem::path& dir,
                                                  const std::vector<std::string>& names,
                                                  NormalizationLevel level,
                                                  const EngineOptions& options) {
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
    std::uint32_t n_parts = r.u32();
    for (std::uint32_t p = 0; p < n_parts; ++p) {
      r.u64();
      r.u64();
      r.u64();
    }
    for (std::uint64_t row = 0; row < n_rows; ++row) {
      for (std::uint32_t c = 0; c < n_cols; ++c) {
        if (t.columns[c].type == ColumnType::Int64) t.columns[c].ints.push_back(r.i64());
        else t.columns[c].strs.push_back(r.str());
      }
    }
    tables.push_back(std::move(t));
  }
  return std::make_unique<ScanHandle>(std::move(tables), level, options, /*validate=*/true);
}

}  // namespace reuse::detail
