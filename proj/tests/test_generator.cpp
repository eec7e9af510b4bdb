#include <doctest.h>

#include <algorithm>

#include "reuse/corpus_io.hpp"
#include "reuse/generator.hpp"

using namespace reuse;

namespace {

GeneratorConfig small_config() {
  GeneratorConfig cfg;
  cfg.n_docs = 40;
  cfg.avg_doc_len = 1500;
  cfg.n_planted_passages = 20;
  cfg.total_copies = 80;
  cfg.seed = 11;
  return cfg;
}

}  // namespace

TEST_CASE("no planted passages means empty ground truth") {
  auto cfg = small_config();
  cfg.n_planted_passages = 0;
  auto [corpus, gt] = generate_synthetic(cfg);
  CHECK(gt.planted.empty());
  CHECK(corpus.size() == 40);
}

TEST_CASE("generator is deterministic for a fixed seed") {
  auto [c1, g1] = generate_synthetic(small_config());
  auto [c2, g2] = generate_synthetic(small_config());
  REQUIRE(c1.size() == c2.size());
  for (std::size_t i = 0; i < c1.size(); ++i) {
    CHECK(c1.docs()[i].doc_id == c2.docs()[i].doc_id);
    CHECK(c1.docs()[i].text == c2.docs()[i].text);
    CHECK(c1.docs()[i].pub_date == c2.docs()[i].pub_date);
    CHECK(c1.docs()[i].authors == c2.docs()[i].authors);
  }
  REQUIRE(g1.planted.size() == g2.planted.size());
  for (std::size_t i = 0; i < g1.planted.size(); ++i) {
    CHECK(g1.planted[i].origin == g2.planted[i].origin);
    REQUIRE(g1.planted[i].copies.size() == g2.planted[i].copies.size());
    for (std::size_t j = 0; j < g1.planted[i].copies.size(); ++j)
      CHECK(g1.planted[i].copies[j].span == g2.planted[i].copies[j].span);
  }
}

TEST_CASE("zipf popularity has a heavy tail") {
  GeneratorConfig cfg;
  cfg.n_docs = 400;
  cfg.avg_doc_len = 800;
  cfg.zipf_exponent = 1.1;
  cfg.n_planted_passages = 1000;
  cfg.total_copies = 5000;
  cfg.seed = 3;
  auto [corpus, gt] = generate_synthetic(cfg);

  std::vector<std::size_t> counts;
  for (const auto& p : gt.planted) counts.push_back(p.copies.size());
  std::sort(counts.begin(), counts.end());
  std::size_t median = counts[counts.size() / 2];
  std::size_t top = counts.back();
  CHECK(top >= 10 * std::max<std::size_t>(median, 1));
}

TEST_CASE("ground-truth spans are in bounds and passage-sized at zero noise") {
  auto cfg = small_config();
  cfg.noise_rate = 0.0;
  auto [corpus, gt] = generate_synthetic(cfg);
  REQUIRE(!gt.planted.empty());
  for (const auto& p : gt.planted) {
    std::vector<Span> spans{p.origin};
    for (const auto& c : p.copies) {
      spans.push_back(c.span);
      CHECK(c.corrupted_chars == 0);
    }
    for (const auto& s : spans) {
      const auto& text = corpus.doc(s.doc_id).text;
      REQUIRE(s.start >= 0);
      REQUIRE(s.end <= static_cast<std::int64_t>(text.size()));
      std::int64_t len = s.end - s.start;
      CHECK(len >= cfg.passage_len_range.first);
      CHECK(len <= cfg.passage_len_range.second);
    }
    // zero noise: copies are verbatim
    const auto& origin_text = corpus.doc(p.origin.doc_id).text;
    std::string origin = origin_text.substr(static_cast<std::size_t>(p.origin.start),
                                            static_cast<std::size_t>(p.origin.end - p.origin.start));
    for (const auto& c : p.copies) {
      const auto& copy_text = corpus.doc(c.span.doc_id).text;
      CHECK(copy_text.substr(static_cast<std::size_t>(c.span.start),
                             static_cast<std::size_t>(c.span.end - c.span.start)) == origin);
    }
  }
}

TEST_CASE("noise corrupts roughly noise_rate characters") {
  auto cfg = small_config();
  cfg.noise_rate = 0.05;
  auto [corpus, gt] = generate_synthetic(cfg);
  std::int64_t corrupted = 0, total = 0;
  for (const auto& p : gt.planted) {
    for (const auto& c : p.copies) {
      corrupted += c.corrupted_chars;
      total += p.origin.end - p.origin.start;
    }
  }
  REQUIRE(total > 0);
  double rate = static_cast<double>(corrupted) / static_cast<double>(total);
  CHECK(rate > 0.02);
  CHECK(rate < 0.10);
}

TEST_CASE("about ten percent of docs have no authors") {
  GeneratorConfig cfg;
  cfg.n_docs = 600;
  cfg.avg_doc_len = 300;
  cfg.n_planted_passages = 0;
  cfg.seed = 5;
  auto [corpus, gt] = generate_synthetic(cfg);
  int empty = 0;
  for (const auto& d : corpus.docs()) {
    if (d.authors.empty()) ++empty;
    CHECK(d.pub_date);
    CHECK(d.pub_date->year >= cfg.date_range.first);
    CHECK(d.pub_date->year <= cfg.date_range.second);
    CHECK(!d.edition_id.empty());
  }
  double frac = static_cast<double>(empty) / 600.0;
  CHECK(frac > 0.03);
  CHECK(frac < 0.25);
}

TEST_CASE("ground truth file round trips") {
  auto cfg = small_config();
  cfg.noise_rate = 0.02;
  auto [corpus, gt] = generate_synthetic(cfg);
  auto dir = std::filesystem::temp_directory_path() / "reuse_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / "gt.json";
  save_ground_truth(gt, path);
  GroundTruth reloaded = load_ground_truth(path);
  REQUIRE(reloaded.planted.size() == gt.planted.size());
  for (std::size_t i = 0; i < gt.planted.size(); ++i) {
    CHECK(reloaded.planted[i].passage_id == gt.planted[i].passage_id);
    CHECK(reloaded.planted[i].origin == gt.planted[i].origin);
    REQUIRE(reloaded.planted[i].copies.size() == gt.planted[i].copies.size());
  }
}
