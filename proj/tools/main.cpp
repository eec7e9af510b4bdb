#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "reuse/bench.hpp"
#include "reuse/cluster.hpp"
#include "reuse/corpus_io.hpp"
#include "reuse/csv.hpp"
#include "reuse/detection_eval.hpp"
#include "reuse/engine.hpp"
#include "reuse/generator.hpp"
#include "reuse/hits_io.hpp"
#include "reuse/matcher.hpp"
#include "reuse/oracle.hpp"
#include "reuse/pipeline_io.hpp"
#include "reuse/schema.hpp"
#include "reuse/sources.hpp"
#include "reuse/synth_tables.hpp"
#include "reuse/tables_io.hpp"
#include "reuse/tasks.hpp"

namespace fs = std::filesystem;
using namespace reuse;

namespace {

void require_exists(const fs::path& path) {
  if (!fs::exists(path)) throw std::runtime_error("missing input file: " + path.string());
}

struct GenArgs {
  GeneratorConfig config;
  std::string output = "corpus.jsonl";
  std::string ground_truth;
};

int cmd_gen(const GenArgs& args) {
  auto [corpus, gt] = generate_synthetic(args.config);
  save_corpus(corpus, args.output);
  std::string gt_path = args.ground_truth.empty() ? args.output + ".gt.json" : args.ground_truth;
  save_ground_truth(gt, gt_path);
  std::cerr << "wrote " << corpus.size() << " docs to " << args.output << " (ground truth: "
            << gt_path << ")\n";
  return 0;
}

struct DetectArgs {
  std::string corpus;
  std::string output = "hits.csv";
  std::string ground_truth;  // optional: print recall/precision
  MatcherConfig config;
};

int cmd_detect(const DetectArgs& args) {
  require_exists(args.corpus);
  Corpus corpus = load_corpus(args.corpus);
  auto hits = find_hits(corpus, args.config);
  write_hits(hits, args.output);
  std::cerr << "wrote " << hits.size() << " hits to " << args.output << "\n";
  if (!args.ground_truth.empty()) {
    auto gt = load_ground_truth(args.ground_truth);
    auto report = evaluate_detection(hits, gt, corpus);
    std::cerr << "recall=" << report.recall << " precision=" << report.precision << "\n";
  }
  return 0;
}

struct PreprocessArgs {
  std::string corpus;
  std::string hits;
  std::string output = "pipeline";
  DefragConfig defrag;
  ClusterConfig cluster;
};

int cmd_preprocess(const PreprocessArgs& args) {
  require_exists(args.corpus);
  require_exists(args.hits);
  Corpus corpus = load_corpus(args.corpus);
  auto hits = ingest_hits(args.hits);
  auto defrag = defragment(hits, args.defrag);
  auto assignment = chinese_whispers(defrag.pieces, defrag.edges, args.cluster);
  auto labeling = identify_sources(assignment, defrag.pieces, corpus);

  fs::create_directories(args.output);
  write_pieces(defrag.pieces, fs::path(args.output) / "pieces.csv");
  write_edges(defrag.edges, fs::path(args.output) / "edges.csv");
  write_clusters(assignment, labeling, fs::path(args.output) / "clusters.csv");
  std::cerr << "wrote " << defrag.pieces.size() << " pieces, " << defrag.edges.size()
            << " edges, " << assignment.n_clusters << " clusters to " << args.output << "\n";
  return 0;
}

struct MaterializeArgs {
  std::string corpus;
  std::string preprocess = "pipeline";
  std::string level = "standard";
  std::string output = "tables";
};

StandardTables load_pipeline_outputs(const std::string& corpus_path,
                                     const std::string& preprocess_dir) {
  require_exists(corpus_path);
  require_exists(fs::path(preprocess_dir) / "pieces.csv");
  require_exists(fs::path(preprocess_dir) / "clusters.csv");
  Corpus corpus = load_corpus(corpus_path);
  auto pieces = read_pieces(fs::path(preprocess_dir) / "pieces.csv");
  auto [assignment, labeling] = read_clusters(fs::path(preprocess_dir) / "clusters.csv");
  return build_standard(corpus, pieces, assignment, labeling);
}

int cmd_materialize(const MaterializeArgs& args) {
  auto tables = load_pipeline_outputs(args.corpus, args.preprocess);
  auto dataset = materialize_dataset(tables, parse_level(args.level));
  write_dataset_csv(dataset, args.output);
  std::cerr << "materialized " << args.level << " level into " << args.output << "\n";
  return 0;
}

struct LoadArgs {
  std::string tables = "tables";
  std::string engine = "row";
  std::string level;
  std::string output = "dataset";
  int scan_workers = 4;
};

int cmd_load(const LoadArgs& args) {
  require_exists(fs::path(args.tables) / "level");
  Dataset dataset = read_dataset_csv(args.tables);
  if (!args.level.empty() && parse_level(args.level) != dataset.level)
    throw std::runtime_error("table directory holds " + to_string(dataset.level) +
                             " level data, not " + args.level);
  EngineOptions options;
  options.scan_workers = args.scan_workers;
  auto handle = load_dataset(dataset, parse_engine(args.engine), options);
  persist_dataset(*handle, args.output);
  auto report = storage_size(*handle);
  std::cerr << "loaded " << to_string(dataset.level) << " into " << args.engine << " engine ("
            << report.total_bytes << " bytes, " << handle->load_seconds() << " s); persisted to "
            << args.output << "\n";
  return 0;
}

struct QueryArgs {
  std::string dataset = "dataset";
  std::string doc;
  std::string edition;
  std::int64_t limit = kQuoteLimit;
  std::string output;
  double timeout_reception_s = 300.0;
  double timeout_quotes_s = 900.0;
  int scan_workers = 4;
};

QueryContext make_deadline_ctx(double timeout_s) {
  QueryContext ctx;
  ctx.deadline = ctx.clock->now() +
                 std::chrono::nanoseconds(static_cast<std::int64_t>(timeout_s * 1e9));
  return ctx;
}

int cmd_query_reception(const QueryArgs& args) {
  require_exists(fs::path(args.dataset) / "manifest.json");
  EngineOptions options;
  options.scan_workers = args.scan_workers;
  auto handle = open_dataset(args.dataset, options);
  QueryContext ctx = make_deadline_ctx(args.timeout_reception_s);
  auto result = reception(*handle, args.doc, ctx);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!args.output.empty()) {
    file.open(args.output, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + args.output);
    out = &file;
  }
  csv::write_row(*out, {"src_doc_id", "src_start", "src_end", "dst_doc_id", "dst_start",
                        "dst_end"});
  for (const auto& r : result.rows)
    csv::write_row(*out, {r.src_doc_id, std::to_string(r.src_start), std::to_string(r.src_end),
                          r.dst_doc_id, std::to_string(r.dst_start), std::to_string(r.dst_end)});
  std::cerr << result.rows.size() << " reception edges for " << args.doc << "\n";
  return 0;
}

int cmd_query_quotes(const QueryArgs& args) {
  require_exists(fs::path(args.dataset) / "manifest.json");
  EngineOptions options;
  options.scan_workers = args.scan_workers;
  auto handle = open_dataset(args.dataset, options);
  QueryContext ctx = make_deadline_ctx(args.timeout_quotes_s);
  auto rows = top_quotes(*handle, args.edition, ctx, args.limit);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!args.output.empty()) {
    file.open(args.output, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + args.output);
    out = &file;
  }
  csv::write_row(*out, {"piece_id", "doc_id", "start", "end", "piece_length", "n_reuses"});
  for (const auto& r : rows)
    csv::write_row(*out, {std::to_string(r.piece_id), r.doc_id, std::to_string(r.start),
                          std::to_string(r.end), std::to_string(r.piece_length),
                          std::to_string(r.n_reuses)});
  std::cerr << rows.size() << " quotes for " << args.edition << "\n";
  return 0;
}

struct StatsArgs {
  std::string corpus;
  std::string preprocess = "pipeline";
  std::string output;
};

int cmd_stats(const StatsArgs& args) {
  auto tables = load_pipeline_outputs(args.corpus, args.preprocess);
  auto stats = dataset_stats(tables);
  nlohmann::json j;
  j["n_docs"] = stats.n_docs;
  j["n_editions"] = stats.n_editions;
  j["n_pieces"] = stats.n_pieces;
  j["n_clusters"] = stats.n_clusters;
  j["n_source_pieces"] = stats.n_source_pieces;
  j["n_destination_pieces"] = stats.n_destination_pieces;
  j["n_reception_edges"] = stats.n_reception_edges;
  if (stats.avg_source_piece_length) j["avg_source_piece_length"] = *stats.avg_source_piece_length;
  else j["avg_source_piece_length"] = nullptr;
  if (stats.avg_n_reuses) j["avg_n_reuses"] = *stats.avg_n_reuses;
  else j["avg_n_reuses"] = nullptr;

  if (args.output.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(args.output, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + args.output);
    out << j.dump(2) << "\n";
  }
  return 0;
}

struct BenchArgs {
  std::string corpus;
  std::string preprocess;
  bool synthetic = false;
  SynthTablesConfig synth;
  std::string output = "bench_out";
  BenchConfig config;
  std::vector<std::string> levels = {"standard", "intermediate", "denorm"};
  std::vector<std::string> engines = {"row", "columnar", "scan"};
  std::string dataset_name = "dataset";
};

int cmd_bench(const BenchArgs& args) {
  StandardTables tables;
  if (args.synthetic) {
    tables = generate_synthetic_tables(args.synth);
  } else {
    if (args.corpus.empty() || args.preprocess.empty())
      throw std::runtime_error("bench needs --corpus and --preprocess, or --synthetic");
    tables = load_pipeline_outputs(args.corpus, args.preprocess);
  }

  std::vector<NormalizationLevel> levels;
  for (const auto& l : args.levels) levels.push_back(parse_level(l));
  std::vector<EngineKind> engines;
  for (const auto& e : args.engines) engines.push_back(parse_engine(e));

  BenchReport report = run_benchmark({{args.dataset_name, &tables}}, levels, engines, args.config);
  report.costs = compute_costs(report, CostModel{}, args.config.n_buckets);

  fs::create_directories(args.output);
  emit_report_json(report, fs::path(args.output) / "report.json");
  emit_report_csv(report, fs::path(args.output) / "report.csv");
  std::cerr << "wrote " << report.cells.size() << " cells to " << args.output
            << (report.results_consistent ? "" : " (RESULT MISMATCH ACROSS LEVELS/ENGINES)")
            << "\n";
  return report.results_consistent ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"text-reuse analysis pipeline: generate, detect, preprocess, materialize, load, "
               "query and benchmark"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML-style config file with per-subcommand sections");

  GenArgs gen;
  auto* cmd_gen_p = app.add_subcommand("gen", "generate a synthetic corpus with planted reuse");
  cmd_gen_p->configurable();
  cmd_gen_p->add_option("--seed", gen.config.seed);
  cmd_gen_p->add_option("--n-docs", gen.config.n_docs);
  cmd_gen_p->add_option("--avg-doc-len", gen.config.avg_doc_len);
  cmd_gen_p->add_option("--zipf", gen.config.zipf_exponent);
  cmd_gen_p->add_option("--noise", gen.config.noise_rate);
  cmd_gen_p->add_option("--passages", gen.config.n_planted_passages);
  cmd_gen_p->add_option("--copies", gen.config.total_copies);
  cmd_gen_p->add_option("--passage-len-min", gen.config.passage_len_range.first);
  cmd_gen_p->add_option("--passage-len-max", gen.config.passage_len_range.second);
  cmd_gen_p->add_option("--year-min", gen.config.date_range.first);
  cmd_gen_p->add_option("--year-max", gen.config.date_range.second);
  cmd_gen_p->add_option("-o,--output", gen.output);
  cmd_gen_p->add_option("--ground-truth", gen.ground_truth);

  DetectArgs detect;
  auto* cmd_detect_p = app.add_subcommand("detect", "find fuzzy reuse hits in a corpus");
  cmd_detect_p->configurable();
  cmd_detect_p->add_option("--corpus", detect.corpus)->required();
  cmd_detect_p->add_option("-o,--output", detect.output);
  cmd_detect_p->add_option("--ground-truth", detect.ground_truth);
  cmd_detect_p->add_option("--k", detect.config.k);
  cmd_detect_p->add_option("--max-kmer-docfreq", detect.config.max_kmer_docfreq);
  cmd_detect_p->add_option("--xdrop", detect.config.xdrop);
  cmd_detect_p->add_option("--min-hit-len", detect.config.min_hit_len);

  PreprocessArgs preprocess;
  auto* cmd_pre_p =
      app.add_subcommand("preprocess", "defragment, cluster and identify sources");
  cmd_pre_p->configurable();
  cmd_pre_p->add_option("--corpus", preprocess.corpus)->required();
  cmd_pre_p->add_option("--hits", preprocess.hits)->required();
  cmd_pre_p->add_option("-o,--output", preprocess.output);
  cmd_pre_p->add_option("--min-overlap-frac", preprocess.defrag.min_overlap_frac);
  cmd_pre_p->add_option("--max-len-ratio", preprocess.defrag.max_len_ratio);
  cmd_pre_p->add_option("--cluster-iterations", preprocess.cluster.max_iterations);
  cmd_pre_p->add_option("--seed", preprocess.cluster.seed);

  MaterializeArgs materialize;
  auto* cmd_mat_p = app.add_subcommand("materialize", "build normalization-level tables as CSV");
  cmd_mat_p->configurable();
  cmd_mat_p->add_option("--corpus", materialize.corpus)->required();
  cmd_mat_p->add_option("--preprocess", materialize.preprocess);
  cmd_mat_p->add_option("--level", materialize.level)
      ->check(CLI::IsMember({"standard", "intermediate", "denorm"}));
  cmd_mat_p->add_option("-o,--output", materialize.output);

  LoadArgs load;
  auto* cmd_load_p = app.add_subcommand("load", "bulk-load tables into an engine and persist");
  cmd_load_p->configurable();
  cmd_load_p->add_option("--tables", load.tables);
  cmd_load_p->add_option("--engine", load.engine)
      ->check(CLI::IsMember({"row", "columnar", "scan"}));
  cmd_load_p->add_option("--level", load.level)
      ->check(CLI::IsMember({"standard", "intermediate", "denorm"}));
  cmd_load_p->add_option("-o,--output", load.output);
  cmd_load_p->add_option("--scan-workers", load.scan_workers);

  QueryArgs query;
  auto* cmd_query_p = app.add_subcommand("query", "run an analysis task on a loaded dataset");
  cmd_query_p->configurable();
  cmd_query_p->require_subcommand(1);
  auto* cmd_rec_p = cmd_query_p->add_subcommand("reception", "all reuse sourced in a document");
  cmd_rec_p->configurable();
  cmd_rec_p->add_option("--dataset", query.dataset);
  cmd_rec_p->add_option("--doc", query.doc)->required();
  cmd_rec_p->add_option("-o,--output", query.output);
  cmd_rec_p->add_option("--timeout-reception-s", query.timeout_reception_s);
  cmd_rec_p->add_option("--scan-workers", query.scan_workers);
  auto* cmd_quo_p = cmd_query_p->add_subcommand("quotes", "most reused quotes of an edition");
  cmd_quo_p->configurable();
  cmd_quo_p->add_option("--dataset", query.dataset);
  cmd_quo_p->add_option("--edition", query.edition)->required();
  cmd_quo_p->add_option("--limit", query.limit);
  cmd_quo_p->add_option("-o,--output", query.output);
  cmd_quo_p->add_option("--timeout-quotes-s", query.timeout_quotes_s);
  cmd_quo_p->add_option("--scan-workers", query.scan_workers);

  StatsArgs stats;
  auto* cmd_stats_p = app.add_subcommand("stats", "dataset statistics report");
  cmd_stats_p->configurable();
  cmd_stats_p->add_option("--corpus", stats.corpus)->required();
  cmd_stats_p->add_option("--preprocess", stats.preprocess);
  cmd_stats_p->add_option("-o,--output", stats.output);

  BenchArgs bench;
  auto* cmd_bench_p = app.add_subcommand("bench", "run the latency/storage/cost benchmark");
  cmd_bench_p->configurable();
  cmd_bench_p->add_option("--corpus", bench.corpus);
  cmd_bench_p->add_option("--preprocess", bench.preprocess);
  cmd_bench_p->add_flag("--synthetic", bench.synthetic,
                        "benchmark a synthetic table-level dataset instead of pipeline output");
  cmd_bench_p->add_option("--synthetic-docs", bench.synth.n_docs);
  cmd_bench_p->add_option("--synthetic-clusters", bench.synth.n_clusters);
  cmd_bench_p->add_option("--synthetic-max-cluster", bench.synth.max_cluster_size);
  cmd_bench_p->add_option("--seed", bench.config.seed);
  cmd_bench_p->add_option("--timeout-reception-s", bench.config.reception_timeout_s);
  cmd_bench_p->add_option("--timeout-quotes-s", bench.config.quotes_timeout_s);
  cmd_bench_p->add_option("--per-bucket", bench.config.per_bucket);
  cmd_bench_p->add_option("--runs", bench.config.runs_per_query);
  cmd_bench_p->add_option("--levels", bench.levels);
  cmd_bench_p->add_option("--engines", bench.engines);
  cmd_bench_p->add_option("--dataset-name", bench.dataset_name);
  cmd_bench_p->add_option("-o,--output", bench.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(cmd_gen_p)) return cmd_gen(gen);
    if (app.got_subcommand(cmd_detect_p)) return cmd_detect(detect);
    if (app.got_subcommand(cmd_pre_p)) return cmd_preprocess(preprocess);
    if (app.got_subcommand(cmd_mat_p)) return cmd_materialize(materialize);
    if (app.got_subcommand(cmd_load_p)) return cmd_load(load);
    if (app.got_subcommand(cmd_query_p)) {
      if (cmd_query_p->got_subcommand(cmd_rec_p)) return cmd_query_reception(query);
      return cmd_query_quotes(query);
    }
    if (app.got_subcommand(cmd_stats_p)) return cmd_stats(stats);
    if (app.got_subcommand(cmd_bench_p)) {
      bench.synth.seed = bench.config.seed;
      return cmd_bench(bench);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
