#include "reuse/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <tuple>

#include <json.hpp>

#include "reuse/csv.hpp"
#include "reuse/tasks.hpp"

namespace reuse {

using nlohmann::json;

std::string to_string(Task task) {
  return task == Task::Reception ? "reception" : "quotes";
}

Task parse_task(std::string_view s) {
  if (s == "reception") return Task::Reception;
  if (s == "quotes") return Task::TopQuotes;
  throw std::runtime_error("unknown task: " + std::string(s));
}

const CostModel::Rates& CostModel::rates(EngineKind kind) const {
  switch (kind) {
    case EngineKind::Scan: return scan;
    case EngineKind::RowIndexed: return row_indexed;
    case EngineKind::Columnar: return columnar;
  }
  return scan;
}

std::uint64_t StorageEntry::table_bytes(std::string_view name) const {
  for (const auto& t : per_table)
    if (t.table == name) return t.bytes;
  throw std::runtime_error("storage entry has no table " + std::string(name));
}

bool operator==(const StorageEntry& a, const StorageEntry& b) {
  if (a.dataset != b.dataset || a.level != b.level || a.engine != b.engine ||
      a.total_bytes != b.total_bytes || a.load_seconds != b.load_seconds ||
      a.materialize_seconds != b.materialize_seconds ||
      a.per_table.size() != b.per_table.size())
    return false;
  for (std::size_t i = 0; i < a.per_table.size(); ++i)
    if (a.per_table[i].table != b.per_table[i].table ||
        a.per_table[i].bytes != b.per_table[i].bytes)
      return false;
  return true;
}

namespace {

std::uint64_t mix64(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t str_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Iterating every result row is part of the measured latency; the digest is
// the by-product used for the cross-level/engine equality check.
std::uint64_t digest_rows(const ReceptionResult& r) {
  std::uint64_t total = 0;
  for (const auto& row : r.rows) {
    std::uint64_t h = 0;
    h = mix64(h, str_hash(row.src_doc_id));
    h = mix64(h, static_cast<std::uint64_t>(row.src_start));
    h = mix64(h, static_cast<std::uint64_t>(row.src_end));
    h = mix64(h, str_hash(row.dst_doc_id));
    h = mix64(h, static_cast<std::uint64_t>(row.dst_start));
    h = mix64(h, static_cast<std::uint64_t>(row.dst_end));
    total += h;
  }
  return total;
}

std::uint64_t digest_rows(const std::vector<QuoteRow>& rows) {
  std::uint64_t total = 0;
  for (const auto& row : rows) {
    std::uint64_t h = 0;
    h = mix64(h, static_cast<std::uint64_t>(row.piece_id));
    h = mix64(h, str_hash(row.doc_id));
    h = mix64(h, static_cast<std::uint64_t>(row.start));
    h = mix64(h, static_cast<std::uint64_t>(row.end));
    h = mix64(h, static_cast<std::uint64_t>(row.piece_length));
    h = mix64(h, static_cast<std::uint64_t>(row.n_reuses));
    total += h;
  }
  return total;
}

struct SampledTask {
  Task task;
  double timeout_s;
  std::vector<BucketSample> samples;
};

}  // namespace

BenchReport run_benchmark(const std::vector<BenchInput>& datasets,
                          const std::vector<NormalizationLevel>& levels,
                          const std::vector<EngineKind>& engines, const BenchConfig& config) {
  BenchReport report;
  const Clock& clock = *config.clock;

  for (const auto& input : datasets) {
    const StandardTables& std_tables = *input.tables;

    std::vector<SampledTask> tasks;
    for (Task task : config.tasks) {
      SamplerConfig sampler;
      sampler.n_buckets = config.n_buckets;
      sampler.per_bucket = config.per_bucket;
      sampler.seed = config.seed;
      sampler.min_workload = task == Task::TopQuotes ? config.quotes_workload_threshold : 1;
      auto points =
          task == Task::Reception ? reception_workloads(std_tables) : quotes_workloads(std_tables);
      SampledTask st;
      st.task = task;
      st.timeout_s = task == Task::Reception ? config.reception_timeout_s
                                             : config.quotes_timeout_s;
      try {
        st.samples = sample_buckets(points, sampler);
      } catch (const std::runtime_error&) {
        continue;  // nothing eligible for this task on this dataset
      }
      tasks.push_back(std::move(st));
    }

    for (NormalizationLevel level : levels) {
      auto m0 = std::chrono::steady_clock::now();
      Dataset dataset = materialize_dataset(std_tables, level);
      auto m1 = std::chrono::steady_clock::now();
      double materialize_seconds = std::chrono::duration<double>(m1 - m0).count();

      for (EngineKind engine : engines) {
        auto handle = load_dataset(dataset, engine, config.engine_options);

        StorageEntry entry;
        entry.dataset = input.name;
        entry.level = level;
        entry.engine = engine;
        StorageReport storage = storage_size(*handle);
        entry.per_table = storage.per_table;
        entry.total_bytes = storage.total_bytes;
        entry.load_seconds = handle->load_seconds();
        entry.materialize_seconds = materialize_seconds;
        report.storage.push_back(std::move(entry));

        for (const auto& st : tasks) {
          for (const auto& sample : st.samples) {
            for (const auto& subject : sample.subjects) {
              for (int run = 1; run <= config.runs_per_query; ++run) {
                BenchCell cell;
                cell.dataset = input.name;
                cell.task = st.task;
                cell.level = level;
                cell.engine = engine;
                cell.bucket = sample.bucket;
                cell.subject = subject;
                cell.run = run;

                QueryContext ctx;
                ctx.clock = &clock;
                auto start = clock.now();
                ctx.deadline =
                    start + std::chrono::nanoseconds(
                                static_cast<std::int64_t>(st.timeout_s * 1e9));
                try {
                  if (st.task == Task::Reception) {
                    ReceptionResult result = reception(*handle, subject, ctx);
                    cell.result_digest = digest_rows(result);
                    cell.row_count = static_cast<std::int64_t>(result.rows.size());
                  } else {
                    auto result = top_quotes(*handle, subject, ctx);
                    cell.result_digest = digest_rows(result);
                    cell.row_count = static_cast<std::int64_t>(result.size());
                  }
                  cell.timed_out = false;
                } catch (const QueryTimeout&) {
                  cell.timed_out = true;
                  cell.row_count.reset();
                  cell.result_digest = 0;
                }
                cell.latency_seconds =
                    std::chrono::duration<double>(clock.now() - start).count();
                report.cells.push_back(std::move(cell));
              }
            }
          }
        }
      }
    }

    // Cross-level/engine equality over the completed cells of each subject.
    std::map<std::tuple<std::string, Task, std::string>,
             std::pair<std::int64_t, std::uint64_t>>
        expected;
    for (const auto& cell : report.cells) {
      if (cell.timed_out || cell.dataset != input.name) continue;
      auto key = std::make_tuple(cell.dataset, cell.task, cell.subject);
      auto value = std::make_pair(*cell.row_count, cell.result_digest);
      auto [it, inserted] = expected.emplace(key, value);
      if (!inserted && it->second != value) {
        report.results_consistent = false;
        ++report.consistency_mismatches;
      }
    }
  }

  return report;
}

double execution_cost_bu(double latency_seconds, double exec_bu_per_hr) {
  return latency_seconds / 3600.0 * exec_bu_per_hr;
}

double storage_cost_bu_per_hr(std::uint64_t bytes, double storage_bu_per_tib_hr) {
  return static_cast<double>(bytes) / std::pow(2.0, 40.0) * storage_bu_per_tib_hr;
}

std::vector<std::string> task_required_tables(Task task, NormalizationLevel level) {
  if (task == Task::Reception) {
    switch (level) {
      case NormalizationLevel::Standard:
        return {"defrag_pieces", "clustered_defrag_pieces", "source_pieces"};
      case NormalizationLevel::Intermediate:
        return {"defrag_pieces", "clustered_defrag_pieces", "source_pieces",
                "destination_pieces"};
      case NormalizationLevel::Denorm: return {"reception_edges"};
    }
  } else {
    switch (level) {
      case NormalizationLevel::Standard:
        return {"docs", "doc_authors", "defrag_pieces", "clustered_defrag_pieces",
                "source_pieces"};
      case NormalizationLevel::Intermediate:
        return {"docs", "doc_authors", "defrag_pieces", "clustered_defrag_pieces",
                "source_pieces", "destination_pieces"};
      case NormalizationLevel::Denorm: return {"docs", "source_piece_statistics"};
    }
  }
  return {};
}

std::vector<CostSummary> compute_costs(const BenchReport& report, const CostModel& model,
                                       int n_buckets) {
  std::map<std::tuple<std::string, Task, NormalizationLevel, EngineKind>, std::vector<double>>
      exec_costs;
  for (const auto& cell : report.cells) {
    if (cell.timed_out) continue;
    if (cell.bucket >= n_buckets - 1) continue;  // highest workload bucket omitted
    exec_costs[{cell.dataset, cell.task, cell.level, cell.engine}].push_back(
        execution_cost_bu(cell.latency_seconds, model.rates(cell.engine).exec_bu_per_hr));
  }

  std::vector<CostSummary> out;
  for (const auto& [key, costs] : exec_costs) {
    auto [dataset, task, level, engine] = key;
    CostSummary s;
    s.dataset = dataset;
    s.task = task;
    s.level = level;
    s.engine = engine;
    s.n_queries = static_cast<std::int64_t>(costs.size());

    double mean = 0;
    for (double c : costs) mean += c;
    mean /= static_cast<double>(costs.size());
    double var = 0;
    for (double c : costs) var += (c - mean) * (c - mean);
    var /= static_cast<double>(costs.size());
    s.exec_cost_mean_bu = mean;
    s.exec_cost_stddev_bu = std::sqrt(var);

    std::uint64_t bytes = 0;
    for (const auto& entry : report.storage) {
      if (entry.dataset != dataset || entry.level != level || entry.engine != engine) continue;
      for (const auto& table : task_required_tables(task, level)) bytes += entry.table_bytes(table);
    }
    s.storage_cost_bu_per_hr =
        storage_cost_bu_per_hr(bytes, model.rates(engine).storage_bu_per_tib_hr);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

json cell_to_json(const BenchCell& c) {
  json j;
  j["bucket"] = c.bucket;
  j["subject"] = c.subject;
  j["run"] = c.run;
  j["latency_seconds"] = c.latency_seconds;
  j["timed_out"] = c.timed_out;
  if (c.row_count) j["row_count"] = *c.row_count;
  else j["row_count"] = nullptr;
  j["result_digest"] = c.result_digest;
  return j;
}

BenchCell cell_from_json(const json& j, const std::string& dataset, Task task,
                         NormalizationLevel level, EngineKind engine) {
  BenchCell c;
  c.dataset = dataset;
  c.task = task;
  c.level = level;
  c.engine = engine;
  c.bucket = j.at("bucket").get<int>();
  c.subject = j.at("subject").get<std::string>();
  c.run = j.at("run").get<int>();
  c.latency_seconds = j.at("latency_seconds").get<double>();
  c.timed_out = j.at("timed_out").get<bool>();
  if (!j.at("row_count").is_null()) c.row_count = j.at("row_count").get<std::int64_t>();
  c.result_digest = j.at("result_digest").get<std::uint64_t>();
  return c;
}

}  // namespace

void emit_report_json(const BenchReport& report, const std::filesystem::path& path) {
  // cells nested by dataset / task / level / engine
  json cells = json::object();
  for (const auto& c : report.cells)
    cells[c.dataset][to_string(c.task)][to_string(c.level)][to_string(c.engine)].push_back(
        cell_to_json(c));

  json storage = json::array();
  for (const auto& e : report.storage) {
    json tables = json::array();
    for (const auto& t : e.per_table)
      tables.push_back(json{{"table", t.table}, {"bytes", t.bytes}});
    storage.push_back(json{{"dataset", e.dataset},
                           {"level", to_string(e.level)},
                           {"engine", to_string(e.engine)},
                           {"per_table", std::move(tables)},
                           {"total_bytes", e.total_bytes},
                           {"load_seconds", e.load_seconds},
                           {"materialize_seconds", e.materialize_seconds}});
  }

  json costs = json::array();
  for (const auto& s : report.costs) {
    costs.push_back(json{{"dataset", s.dataset},
                         {"task", to_string(s.task)},
                         {"level", to_string(s.level)},
                         {"engine", to_string(s.engine)},
                         {"storage_cost_bu_per_hr", s.storage_cost_bu_per_hr},
                         {"exec_cost_mean_bu", s.exec_cost_mean_bu},
                         {"exec_cost_stddev_bu", s.exec_cost_stddev_bu},
                         {"n_queries", s.n_queries}});
  }

  json root{{"cells", std::move(cells)},
            {"storage", std::move(storage)},
            {"costs", std::move(costs)},
            {"results_consistent", report.results_consistent},
            {"consistency_mismatches", report.consistency_mismatches}};

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write report: " + path.string());
  out << root.dump(2) << '\n';
}

void emit_report_csv(const BenchReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write report: " + path.string());
  csv::write_row(out, {"dataset", "task", "level", "engine", "bucket", "subject", "run",
                       "latency_seconds", "timed_out", "row_count"});
  for (const auto& c : report.cells) {
    char latency[32];
    std::snprintf(latency, sizeof(latency), "%.9f", c.latency_seconds);
    csv::write_row(out, {c.dataset, to_string(c.task), to_string(c.level), to_string(c.engine),
                         std::to_string(c.bucket), c.subject, std::to_string(c.run), latency,
                         c.timed_out ? "1" : "0",
                         c.row_count ? std::to_string(*c.row_count) : ""});
  }
}

void sort_report(BenchReport& report) {
  auto cell_key = [](const BenchCell& c) {
    return std::make_tuple(c.dataset, to_string(c.task), to_string(c.level), to_string(c.engine),
                           c.bucket, c.subject, c.run);
  };
  std::sort(report.cells.begin(), report.cells.end(),
            [&](const BenchCell& a, const BenchCell& b) { return cell_key(a) < cell_key(b); });
  std::sort(report.storage.begin(), report.storage.end(),
            [](const StorageEntry& a, const StorageEntry& b) {
              return std::make_tuple(a.dataset, to_string(a.level), to_string(a.engine)) <
                     std::make_tuple(b.dataset, to_string(b.level), to_string(b.engine));
            });
  std::sort(report.costs.begin(), report.costs.end(),
            [](const CostSummary& a, const CostSummary& b) {
              return std::make_tuple(a.dataset, to_string(a.task), to_string(a.level),
                                     to_string(a.engine)) <
                     std::make_tuple(b.dataset, to_string(b.task), to_string(b.level),
                                     to_string(b.engine));
            });
}

BenchReport parse_report_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open report: " + path.string());
  json root;
  in >> root;

  BenchReport report;
  for (const auto& [dataset, by_task] : root.at("cells").items()) {
    for (const auto& [task_name, by_level] : by_task.items()) {
      for (const auto& [level_name, by_engine] : by_level.items()) {
        for (const auto& [engine_name, cell_list] : by_engine.items()) {
          for (const auto& cj : cell_list)
            report.cells.push_back(cell_from_json(cj, dataset, parse_task(task_name),
                                                  parse_level(level_name),
                                                  parse_engine(engine_name)));
        }
      }
    }
  }
  for (const auto& ej : root.at("storage")) {
    StorageEntry e;
    e.dataset = ej.at("dataset").get<std::string>();
    e.level = parse_level(ej.at("level").get<std::string>());
    e.engine = parse_engine(ej.at("engine").get<std::string>());
    for (const auto& tj : ej.at("per_table"))
      e.per_table.push_back(
          {tj.at("table").get<std::string>(), tj.at("bytes").get<std::uint64_t>()});
    e.total_bytes = ej.at("total_bytes").get<std::uint64_t>();
    e.load_seconds = ej.at("load_seconds").get<double>();
    e.materialize_seconds = ej.at("materialize_seconds").get<double>();
    report.storage.push_back(std::move(e));
  }
  for (const auto& sj : root.at("costs")) {
    CostSummary s;
    s.dataset = sj.at("dataset").get<std::string>();
    s.task = parse_task(sj.at("task").get<std::string>());
    s.level = parse_level(sj.at("level").get<std::string>());
    s.engine = parse_engine(sj.at("engine").get<std::string>());
    s.storage_cost_bu_per_hr = sj.at("storage_cost_bu_per_hr").get<double>();
    s.exec_cost_mean_bu = sj.at("exec_cost_mean_bu").get<double>();
    s.exec_cost_stddev_bu = sj.at("exec_cost_stddev_bu").get<double>();
    s.n_queries = sj.at("n_queries").get<std::int64_t>();
    report.costs.push_back(std::move(s));
  }
  report.results_consistent = root.at("results_consistent").get<bool>();
  report.consistency_mismatches = root.at("consistency_mismatches").get<std::int64_t>();
  return report;
}

}  // namespace reuse
