#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "reuse/engine.hpp"
#include "reuse/schema.hpp"
#include "reuse/workload.hpp"

namespace reuse {

enum class Task { Reception, TopQuotes };

std::string to_string(Task task);
Task parse_task(std::string_view s);

struct CostModel {
  struct Rates {
    double storage_bu_per_tib_hr = 0;
    double exec_bu_per_hr = 0;
  };
  Rates scan{1.0, 1254.0};
  Rates row_indexed{3.5, 24.0};
  Rates columnar{3.5, 24.0};

  const Rates& rates(EngineKind kind) const;
};

struct BenchConfig {
  double reception_timeout_s = 300.0;
  double quotes_timeout_s = 900.0;
  int n_buckets = 10;
  int per_bucket = 10;
  std::int64_t quotes_workload_threshold = 100;
  int runs_per_query = 2;  // run 1 = cold cache, run 2 = hot
  std::uint64_t seed = 0;
  std::vector<Task> tasks = {Task::Reception, Task::TopQuotes};
  EngineOptions engine_options;
  const Clock* clock = &steady_clock_ref();
};

// One executed (task, level, engine, subject, run) query.
struct BenchCell {
  std::string dataset;
  Task task = Task::Reception;
  NormalizationLevel level = NormalizationLevel::Standard;
  EngineKind engine = EngineKind::RowIndexed;
  int bucket = 0;
  std::string subject;
  int run = 1;
  double latency_seconds = 0;
  bool timed_out = false;
  std::optional<std::int64_t> row_count;  // absent when timed out
  std::uint64_t result_digest = 0;        // order-insensitive content hash

  friend bool operator==(const BenchCell&, const BenchCell&) = default;
};

struct StorageEntry {
  std::string dataset;
  NormalizationLevel level = NormalizationLevel::Standard;
  EngineKind engine = EngineKind::RowIndexed;
  std::vector<StorageReport::TableBytes> per_table;
  std::uint64_t total_bytes = 0;
  double load_seconds = 0;
  double materialize_seconds = 0;

  std::uint64_t table_bytes(std::string_view name) const;
  friend bool operator==(const StorageEntry&, const StorageEntry&);
};

struct CostSummary {
  std::string dataset;
  Task task = Task::Reception;
  NormalizationLevel level = NormalizationLevel::Standard;
  EngineKind engine = EngineKind::RowIndexed;
  double storage_cost_bu_per_hr = 0;  // over the tables the task's query touches
  double exec_cost_mean_bu = 0;
  double exec_cost_stddev_bu = 0;
  std::int64_t n_queries = 0;

  friend bool operator==(const CostSummary&, const CostSummary&) = default;
};

struct BenchReport {
  std::vector<BenchCell> cells;
  std::vector<StorageEntry> storage;
  std::vector<CostSummary> costs;
  bool results_consistent = true;  // cross-level/engine equality over completed cells
  std::int64_t consistency_mismatches = 0;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

struct BenchInput {
  std::string name;
  const StandardTables* tables = nullptr;
};

// Executes the full protocol: per dataset, compute workloads and bucket
// samples; per (level, engine), materialize (timed), load (timed), size the
// storage and run every sampled query runs_per_query times under the task
// timeout. Cells run strictly sequentially. Timed-out cells carry no rows.
BenchReport run_benchmark(const std::vector<BenchInput>& datasets,
                          const std::vector<NormalizationLevel>& levels,
                          const std::vector<EngineKind>& engines, const BenchConfig& config);

// Execution cost: latency_hours x engine rate. Storage cost: bytes in TiB x
// engine rate, summed over the tables the task's plan reads at that level.
// The highest bucket is excluded, as are timed-out cells.
std::vector<CostSummary> compute_costs(const BenchReport& report, const CostModel& model,
                                       int n_buckets = 10);

double execution_cost_bu(double latency_seconds, double exec_bu_per_hr);
double storage_cost_bu_per_hr(std::uint64_t bytes, double storage_bu_per_tib_hr);
std::vector<std::string> task_required_tables(Task task, NormalizationLevel level);

// report.json / report.csv. JSON nests by dataset/task/level/engine and
// round-trips losslessly through parse_report_json; the CSV holds one row
// per cell.
void emit_report_json(const BenchReport& report, const std::filesystem::path& path);
void emit_report_csv(const BenchReport& report, const std::filesystem::path& path);
BenchReport parse_report_json(const std::filesystem::path& path);

// Canonical ordering of cells/storage/costs, for structural comparison of
// reports that crossed a serialization boundary.
void sort_report(BenchReport& report);

}  // namespace reuse
