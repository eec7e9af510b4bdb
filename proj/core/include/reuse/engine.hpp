#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reuse/tables.hpp"

namespace reuse {

enum class EngineKind { RowIndexed, Columnar, Scan };

std::string to_string(EngineKind kind);
EngineKind parse_engine(std::string_view s);  // "row" | "columnar" | "scan"

// Monotonic clock behind the benchmark timings and deadline checks.
// Injectable so timeout behaviour is testable without wall-clock waits.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::chrono::nanoseconds now() const = 0;
};

const Clock& steady_clock_ref();

class QueryTimeout : public std::runtime_error {
 public:
  QueryTimeout() : std::runtime_error("query exceeded its deadline") {}
};

struct QueryStats {
  std::uint64_t index_probes = 0;
  std::uint64_t blocks_scanned = 0;
  std::uint64_t blocks_pruned = 0;
  std::uint64_t partitions_scanned = 0;
  std::uint64_t rows_visited = 0;
};

// Carried through every physical operator. Deadline enforcement is
// cooperative: engines call checkpoint() between probes, block scans and
// partitions, and tick() inside row loops.
class QueryContext {
 public:
  const Clock* clock = &steady_clock_ref();
  std::optional<std::chrono::nanoseconds> deadline;
  bool use_zone_maps = true;  // disabling pruning must never change results
  mutable QueryStats stats;

  void checkpoint() const {
    if (deadline && clock->now() > *deadline) throw QueryTimeout{};
  }
  void tick() const {
    if (deadline && (++tick_ & 1023) == 0) checkpoint();
  }

 private:
  mutable std::uint64_t tick_ = 0;
};

struct EngineOptions {
  int scan_workers = 4;  // partition parallelism of the scan engine
};

struct StorageReport {
  struct TableBytes {
    std::string table;
    std::uint64_t bytes = 0;  // data plus index/dictionary/zone-map overhead
  };
  std::vector<TableBytes> per_table;
  std::uint64_t total_bytes = 0;  // sum of per_table

  std::uint64_t table_bytes(std::string_view name) const;
};

using RowId = std::uint32_t;

// A loaded, immutable dataset inside one engine. Concurrent read queries are
// safe; load and persist require exclusive access. All read paths honour the
// QueryContext deadline. filter_* results are ascending row ids.
class DatasetHandle {
 public:
  virtual ~DatasetHandle() = default;

  EngineKind kind() const { return kind_; }
  NormalizationLevel level() const { return level_; }
  double load_seconds() const { return load_seconds_; }

  bool is_closed() const { return closed_; }
  void close() { closed_ = true; }

  virtual std::vector<std::string> table_names() const = 0;
  virtual std::size_t table_rows(std::string_view table) const = 0;

  virtual std::vector<RowId> filter_eq_str(std::string_view table, std::string_view col,
                                           const std::string& value, QueryContext& ctx) const = 0;
  virtual std::vector<RowId> filter_eq_int(std::string_view table, std::string_view col,
                                           std::int64_t value, QueryContext& ctx) const = 0;
  // `keys` must be sorted ascending.
  virtual std::vector<RowId> filter_in_int(std::string_view table, std::string_view col,
                                           const std::vector<std::int64_t>& keys,
                                           QueryContext& ctx) const = 0;
  virtual std::vector<RowId> filter_in_str(std::string_view table, std::string_view col,
                                           const std::vector<std::string>& keys,
                                           QueryContext& ctx) const = 0;
  virtual std::vector<RowId> filter_not_in_int(std::string_view table, std::string_view col,
                                               const std::vector<std::int64_t>& keys,
                                               QueryContext& ctx) const = 0;

  virtual void gather_int(std::string_view table, std::string_view col, std::span<const RowId> rows,
                          std::vector<std::int64_t>& out, QueryContext& ctx) const = 0;
  virtual void gather_str(std::string_view table, std::string_view col, std::span<const RowId> rows,
                          std::vector<std::string>& out, QueryContext& ctx) const = 0;

  // Full logical content, decoded. Used by loaders, tests and equivalence checks.
  virtual Table materialize_table(std::string_view table) const = 0;

  // Distinct keys held by an ordered index; empty for engines without
  // secondary indexes.
  virtual std::vector<std::string> index_string_keys(std::string_view table,
                                                     std::string_view col) const {
    (void)table;
    (void)col;
    return {};
  }

 protected:
  EngineKind kind_ = EngineKind::RowIndexed;
  NormalizationLevel level_ = NormalizationLevel::Standard;
  double load_seconds_ = 0.0;
  bool closed_ = false;

  void require_open() const {
    if (closed_) throw std::logic_error("dataset handle is closed");
  }

  friend void set_load_seconds(DatasetHandle& h, double s);
};

// Builds the physical structures for `kind`. The table set must match the
// declared level exactly, otherwise a mismatch error is thrown. Load time is
// measured and available via load_seconds().
std::unique_ptr<DatasetHandle> load_dataset(const std::vector<Table>& tables,
                                            NormalizationLevel level, EngineKind kind,
                                            const EngineOptions& options = {});
std::unique_ptr<DatasetHandle> load_dataset(const Dataset& dataset, EngineKind kind,
                                            const EngineOptions& options = {});

// Persists a handle as a directory holding one file per table (engine-native
// format: magic RRF1/RCF1/RSF1) plus a manifest. Writing is deterministic:
// persisting twice yields identical files.
void persist_dataset(const DatasetHandle& handle, const std::filesystem::path& dir);
std::unique_ptr<DatasetHandle> open_dataset(const std::filesystem::path& dir,
                                            const EngineOptions& options = {});

// Exact on-disk bytes per table (data + index/dictionary overhead), computed
// from the serialized form.
StorageReport storage_size(const DatasetHandle& handle);

}  // namespace reuse
