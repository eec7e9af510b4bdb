#include <benchmark/benchmark.h>

#include "reuse/cluster.hpp"
#include "reuse/engine.hpp"
#include "reuse/generator.hpp"
#include "reuse/matcher.hpp"
#include "reuse/pieces.hpp"
#include "reuse/schema.hpp"
#include "reuse/synth_tables.hpp"
#include "reuse/tasks.hpp"

using namespace reuse;

namespace {

std::pair<Corpus, GroundTruth> bench_corpus() {
  GeneratorConfig cfg;
  cfg.n_docs = 60;
  cfg.avg_doc_len = 2500;
  cfg.n_planted_passages = 40;
  cfg.total_copies = 150;
  cfg.noise_rate = 0.02;
  cfg.seed = 1;
  return generate_synthetic(cfg);
}

StandardTables bench_tables(std::int64_t clusters) {
  SynthTablesConfig cfg;
  cfg.n_docs = 2000;
  cfg.n_clusters = clusters;
  cfg.max_cluster_size = 400;
  cfg.seed = 2;
  return generate_synthetic_tables(cfg);
}

}  // namespace

static void BM_FindHits(benchmark::State& state) {
  auto [corpus, gt] = bench_corpus();
  for (auto _ : state) benchmark::DoNotOptimize(find_hits(corpus));
}
BENCHMARK(BM_FindHits)->Unit(benchmark::kMillisecond);

static void BM_Defragment(benchmark::State& state) {
  auto [corpus, gt] = bench_corpus();
  auto hits = find_hits(corpus);
  for (auto _ : state) benchmark::DoNotOptimize(defragment(hits));
}
BENCHMARK(BM_Defragment)->Unit(benchmark::kMillisecond);

static void BM_ChineseWhispers(benchmark::State& state) {
  auto [corpus, gt] = bench_corpus();
  auto defrag = defragment(find_hits(corpus));
  for (auto _ : state)
    benchmark::DoNotOptimize(chinese_whispers(defrag.pieces, defrag.edges));
}
BENCHMARK(BM_ChineseWhispers)->Unit(benchmark::kMillisecond);

static void BM_MaterializeReceptionEdges(benchmark::State& state) {
  auto tables = bench_tables(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(materialize_reception_edges(tables));
}
BENCHMARK(BM_MaterializeReceptionEdges)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_EngineLoad(benchmark::State& state) {
  auto dataset =
      materialize_dataset(bench_tables(5000), NormalizationLevel::Denorm);
  auto kind = static_cast<EngineKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(load_dataset(dataset, kind));
}
BENCHMARK(BM_EngineLoad)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_ReceptionQuery(benchmark::State& state) {
  auto tables = bench_tables(5000);
  auto level = static_cast<NormalizationLevel>(state.range(0));
  auto kind = static_cast<EngineKind>(state.range(1));
  auto handle = load_dataset(materialize_dataset(tables, level), kind);
  const std::string doc = tables.piece(tables.source_pieces.front().piece_id).doc_id;
  for (auto _ : state) benchmark::DoNotOptimize(reception(*handle, doc));
}
BENCHMARK(BM_ReceptionQuery)
    ->ArgsProduct({{0, 2}, {0, 1, 2}})
    ->Unit(benchmark::kMicrosecond);

static void BM_TopQuotesQuery(benchmark::State& state) {
  auto tables = bench_tables(5000);
  auto kind = static_cast<EngineKind>(state.range(0));
  auto handle = load_dataset(materialize_dataset(tables, NormalizationLevel::Denorm), kind);
  const std::string edition = tables.docs.front().edition_id;
  for (auto _ : state) benchmark::DoNotOptimize(top_quotes(*handle, edition));
}
BENCHMARK(BM_TopQuotesQuery)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
