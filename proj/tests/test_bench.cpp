#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>

#include "fixtures.hpp"
#include "reuse/bench.hpp"
#include "reuse/synth_tables.hpp"

using namespace reuse;
namespace fs = std::filesystem;

namespace {

// Advances a fixed amount per reading, so every deadline checkpoint "costs"
// simulated time. The step exceeds both task budgets, which makes the first
// checkpoint inside any query cross its deadline. Thread-safe: the scan
// engine reads it from workers.
class ThrottledClock final : public Clock {
 public:
  explicit ThrottledClock(std::chrono::nanoseconds step) : step_(step) {}
  std::chrono::nanoseconds now() const override {
    return std::chrono::nanoseconds(ticks_.fetch_add(1, std::memory_order_relaxed) *
                                    step_.count());
  }

 private:
  std::chrono::nanoseconds step_;
  mutable std::atomic<std::int64_t> ticks_{0};
};

BenchConfig fast_config() {
  BenchConfig cfg;
  cfg.per_bucket = 2;
  cfg.seed = 1;
  return cfg;
}

}  // namespace

TEST_CASE("cost model spot values") {
  CostModel model;
  CHECK(execution_cost_bu(3600.0, model.scan.exec_bu_per_hr) == doctest::Approx(1254.0));
  CHECK(execution_cost_bu(3600.0, model.row_indexed.exec_bu_per_hr) == doctest::Approx(24.0));
  CHECK(execution_cost_bu(1800.0, model.scan.exec_bu_per_hr) == doctest::Approx(627.0));
  CHECK(execution_cost_bu(0.0, model.scan.exec_bu_per_hr) == 0.0);
  // 2 TiB at 3.5 BU/TiB-hr
  CHECK(storage_cost_bu_per_hr(2ull << 40, model.row_indexed.storage_bu_per_tib_hr) ==
        doctest::Approx(7.0));
  // cost linearity
  CHECK(execution_cost_bu(246.0, 24.0) == doctest::Approx(2 * execution_cost_bu(123.0, 24.0)));
}

TEST_CASE("benchmark runs the full grid and stays consistent") {
  SynthTablesConfig cfg;
  cfg.n_docs = 120;
  cfg.n_clusters = 180;
  cfg.max_cluster_size = 30;
  cfg.seed = 2;
  auto tables = generate_synthetic_tables(cfg);

  auto config = fast_config();
  BenchReport report = run_benchmark({{"t", &tables}},
                                     {NormalizationLevel::Standard, NormalizationLevel::Denorm},
                                     {EngineKind::RowIndexed, EngineKind::Scan}, config);
  CHECK(report.results_consistent);
  CHECK(report.consistency_mismatches == 0);
  CHECK(!report.cells.empty());
  CHECK(report.storage.size() == 4);

  // every cell executed exactly once per (task, level, engine, subject, run)
  std::set<std::string> seen;
  for (const auto& c : report.cells) {
    CHECK(!c.timed_out);
    REQUIRE(c.row_count.has_value());
    auto key = c.dataset + "|" + to_string(c.task) + "|" + to_string(c.level) + "|" +
               to_string(c.engine) + "|" + c.subject + "|" + std::to_string(c.run);
    CHECK(seen.insert(key).second);
  }

  // runs per query respected
  int runs_1 = 0, runs_2 = 0;
  for (const auto& c : report.cells) (c.run == 1 ? runs_1 : runs_2)++;
  CHECK(runs_1 == runs_2);

  // storage entries carry load and materialization timings
  for (const auto& e : report.storage) {
    CHECK(e.load_seconds >= 0);
    CHECK(e.materialize_seconds >= 0);
    CHECK(e.total_bytes > 0);
  }

  report.costs = compute_costs(report, CostModel{});
  CHECK(!report.costs.empty());
  for (const auto& s : report.costs) {
    CHECK(s.n_queries > 0);
    CHECK(s.storage_cost_bu_per_hr > 0);
  }

  // deterministic modulo latency fields
  BenchReport again = run_benchmark({{"t", &tables}},
                                    {NormalizationLevel::Standard, NormalizationLevel::Denorm},
                                    {EngineKind::RowIndexed, EngineKind::Scan}, config);
  REQUIRE(again.cells.size() == report.cells.size());
  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    CHECK(again.cells[i].subject == report.cells[i].subject);
    CHECK(again.cells[i].row_count == report.cells[i].row_count);
    CHECK(again.cells[i].result_digest == report.cells[i].result_digest);
  }
}

TEST_CASE("report round trips through JSON and CSV has one row per cell") {
  SynthTablesConfig cfg;
  cfg.n_docs = 60;
  cfg.n_clusters = 80;
  cfg.seed = 3;
  auto tables = generate_synthetic_tables(cfg);

  auto config = fast_config();
  BenchReport report =
      run_benchmark({{"t", &tables}}, {NormalizationLevel::Denorm}, {EngineKind::Columnar},
                    config);
  report.costs = compute_costs(report, CostModel{});

  auto dir = fs::temp_directory_path() / "reuse_tests" / "report";
  fs::create_directories(dir);
  emit_report_json(report, dir / "report.json");
  emit_report_csv(report, dir / "report.csv");

  BenchReport parsed = parse_report_json(dir / "report.json");
  sort_report(report);
  sort_report(parsed);
  CHECK(parsed == report);

  std::ifstream csv(dir / "report.csv");
  std::string line;
  std::size_t lines = 0;
  while (std::getline(csv, line))
    if (!line.empty()) ++lines;
  CHECK(lines == report.cells.size() + 1);  // header + one row per cell

  // empty report round trips too
  BenchReport empty;
  emit_report_json(empty, dir / "empty.json");
  CHECK(parse_report_json(dir / "empty.json") == empty);
  emit_report_csv(empty, dir / "empty.csv");
}

TEST_CASE("timeouts mark cells with no rows") {
  SynthTablesConfig cfg;
  cfg.n_docs = 100;
  cfg.n_clusters = 150;
  cfg.seed = 4;
  auto tables = generate_synthetic_tables(cfg);

  // Each clock reading advances 1000 simulated seconds, so every query blows
  // through the 300s/900s budgets while wall time stays negligible.
  ThrottledClock clock(std::chrono::seconds(1000));
  auto config = fast_config();
  config.clock = &clock;

  BenchReport report = run_benchmark({{"t", &tables}}, {NormalizationLevel::Standard},
                                     {EngineKind::RowIndexed}, config);
  REQUIRE(!report.cells.empty());
  for (const auto& c : report.cells) {
    CHECK(c.timed_out);
    CHECK_FALSE(c.row_count.has_value());
    CHECK(c.result_digest == 0);
    double limit = c.task == Task::Reception ? 300.0 : 900.0;
    CHECK(c.latency_seconds >= limit);
  }

  // timed-out cells are excluded from cost summaries
  auto costs = compute_costs(report, CostModel{});
  CHECK(costs.empty());
}

TEST_CASE("real-time deadline abandons a slow query") {
  SynthTablesConfig cfg;
  cfg.n_docs = 200;
  cfg.n_clusters = 3000;
  cfg.max_cluster_size = 80;
  cfg.seed = 5;
  auto tables = generate_synthetic_tables(cfg);

  auto config = fast_config();
  config.reception_timeout_s = 1e-7;  // expires immediately in wall time
  config.quotes_timeout_s = 1e-7;
  BenchReport report = run_benchmark({{"t", &tables}}, {NormalizationLevel::Standard},
                                     {EngineKind::Columnar}, config);
  std::size_t timed_out = 0;
  for (const auto& c : report.cells) timed_out += c.timed_out ? 1 : 0;
  CHECK(timed_out == report.cells.size());
}

TEST_CASE("highest bucket is excluded from cost summaries") {
  BenchReport report;
  for (int bucket : {0, 9}) {
    BenchCell c;
    c.dataset = "t";
    c.task = Task::Reception;
    c.level = NormalizationLevel::Denorm;
    c.engine = EngineKind::RowIndexed;
    c.bucket = bucket;
    c.subject = "s" + std::to_string(bucket);
    c.latency_seconds = 3600.0;
    c.row_count = 1;
    report.cells.push_back(c);
  }
  StorageEntry e;
  e.dataset = "t";
  e.level = NormalizationLevel::Denorm;
  e.engine = EngineKind::RowIndexed;
  e.per_table.push_back({"reception_edges", 1ull << 40});
  e.total_bytes = 1ull << 40;
  report.storage.push_back(e);

  auto costs = compute_costs(report, CostModel{});
  REQUIRE(costs.size() == 1);
  CHECK(costs[0].n_queries == 1);  // only the bucket-0 cell
  CHECK(costs[0].exec_cost_mean_bu == doctest::Approx(24.0));
  CHECK(costs[0].storage_cost_bu_per_hr == doctest::Approx(3.5));
}
