#include <doctest.h>

#include <algorithm>

#include "reuse/detection_eval.hpp"
#include "reuse/generator.hpp"
#include "reuse/matcher.hpp"
#include "reuse/normalize.hpp"
#include "reuse/rng.hpp"

using namespace reuse;

namespace {

std::string random_words(Rng& rng, std::size_t len) {
  std::string out;
  while (out.size() < len) {
    std::size_t wl = 3 + rng.below(7);
    if (!out.empty()) out += ' ';
    for (std::size_t i = 0; i < wl; ++i) out += static_cast<char>('a' + rng.below(26));
  }
  out.resize(len);
  return out;
}

Document make_doc(std::string id, std::string text) {
  Document d;
  d.doc_id = std::move(id);
  d.collection = "c";
  d.title = "t";
  d.edition_id = "e_" + d.doc_id;
  d.text = std::move(text);
  return d;
}

}  // namespace

TEST_CASE("verbatim shared passage yields exactly one covering hit") {
  Rng rng(21);
  std::string shared = random_words(rng, 200);
  std::string text_a = random_words(rng, 300) + " " + shared + " " + random_words(rng, 250);
  std::string text_b = random_words(rng, 150) + " " + shared + " " + random_words(rng, 400);
  std::int64_t start_a = 301, start_b = 151;

  Corpus corpus;
  corpus.add(make_doc("A", text_a));
  corpus.add(make_doc("B", text_b));

  auto hits = find_hits(corpus);
  REQUIRE(hits.size() == 1);
  const Hit& h = hits[0];
  CHECK(h.doc_a == "A");
  CHECK(h.doc_b == "B");
  CHECK(h.start_a <= start_a);
  CHECK(h.end_a >= start_a + 200);
  CHECK(h.start_b <= start_b);
  CHECK(h.end_b >= start_b + 200);
  // spans must not balloon past the planted passage
  CHECK(h.end_a - h.start_a < 240);
}

TEST_CASE("matcher is deterministic") {
  GeneratorConfig cfg;
  cfg.n_docs = 20;
  cfg.avg_doc_len = 1200;
  cfg.n_planted_passages = 10;
  cfg.total_copies = 30;
  cfg.noise_rate = 0.02;
  cfg.seed = 9;
  auto [corpus, gt] = generate_synthetic(cfg);
  auto h1 = find_hits(corpus);
  auto h2 = find_hits(corpus);
  CHECK(h1 == h2);
  CHECK(!h1.empty());
}

TEST_CASE("substituted characters still extend across the passage") {
  Rng rng(33);
  std::string shared = random_words(rng, 200);
  std::string corrupted = shared;
  corrupted[60] = corrupted[60] == 'q' ? 'z' : 'q';
  corrupted[140] = corrupted[140] == 'q' ? 'z' : 'q';

  std::string text_a = random_words(rng, 200) + " " + shared + " " + random_words(rng, 200);
  std::string text_b = random_words(rng, 120) + " " + corrupted + " " + random_words(rng, 200);

  Corpus corpus;
  corpus.add(make_doc("A", text_a));
  corpus.add(make_doc("B", text_b));

  auto hits = find_hits(corpus);
  REQUIRE(!hits.empty());
  // normalized length of the longest hit covers most of the passage
  std::int64_t best = 0;
  for (const auto& h : hits) best = std::max(best, h.end_a - h.start_a);
  CHECK(best >= 180);

  // character overlap with the planted span
  std::int64_t pa = 201;
  std::int64_t overlap = 0;
  for (const auto& h : hits)
    overlap = std::max(overlap, std::min(h.end_a, pa + 200) - std::max(h.start_a, pa));
  CHECK(static_cast<double>(overlap) / 200.0 >= 0.9);
}

TEST_CASE("hits respect min_hit_len and stay in bounds") {
  GeneratorConfig cfg;
  cfg.n_docs = 30;
  cfg.avg_doc_len = 1000;
  cfg.n_planted_passages = 15;
  cfg.total_copies = 45;
  cfg.noise_rate = 0.01;
  cfg.seed = 17;
  auto [corpus, gt] = generate_synthetic(cfg);

  MatcherConfig mc;
  auto hits = find_hits(corpus, mc);
  for (const auto& h : hits) {
    CHECK(h.doc_a != h.doc_b);
    CHECK(h.start_a < h.end_a);
    CHECK(h.start_b < h.end_b);
    CHECK(h.start_a >= 0);
    CHECK(h.start_b >= 0);
    CHECK(h.end_a <= static_cast<std::int64_t>(corpus.doc(h.doc_a).text.size()));
    CHECK(h.end_b <= static_cast<std::int64_t>(corpus.doc(h.doc_b).text.size()));
    // normalized length of each side is at least min_hit_len
    CHECK(h.end_a - h.start_a >= mc.min_hit_len);
    CHECK(std::tie(h.doc_a, h.start_a) <= std::tie(h.doc_b, h.start_b));
  }
}

TEST_CASE("raising min_hit_len never adds hits") {
  GeneratorConfig cfg;
  cfg.n_docs = 15;
  cfg.avg_doc_len = 900;
  cfg.n_planted_passages = 8;
  cfg.total_copies = 20;
  cfg.noise_rate = 0.03;
  cfg.seed = 23;
  auto [corpus, gt] = generate_synthetic(cfg);

  MatcherConfig loose;
  loose.min_hit_len = 100;
  MatcherConfig strict;
  strict.min_hit_len = 150;
  auto hits_loose = find_hits(corpus, loose);
  auto hits_strict = find_hits(corpus, strict);
  CHECK(hits_strict.size() <= hits_loose.size());
  for (const auto& h : hits_strict)
    CHECK(std::find(hits_loose.begin(), hits_loose.end(), h) != hits_loose.end());
}

TEST_CASE("hit set is symmetric in document order") {
  GeneratorConfig cfg;
  cfg.n_docs = 16;
  cfg.avg_doc_len = 1000;
  cfg.n_planted_passages = 8;
  cfg.total_copies = 24;
  cfg.noise_rate = 0.01;
  cfg.seed = 47;
  auto [corpus, gt] = generate_synthetic(cfg);

  Corpus reversed;
  for (auto it = corpus.docs().rbegin(); it != corpus.docs().rend(); ++it) reversed.add(*it);

  CHECK(find_hits(corpus) == find_hits(reversed));
}

TEST_CASE("matcher config is validated") {
  MatcherConfig bad;
  bad.k = 3;
  CHECK_THROWS(bad.validate());
  bad = MatcherConfig{};
  bad.min_hit_len = 5;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("evaluate_detection scores exact ground-truth hits as perfect") {
  GeneratorConfig cfg;
  cfg.n_docs = 12;
  cfg.avg_doc_len = 900;
  cfg.n_planted_passages = 6;
  cfg.total_copies = 15;
  cfg.seed = 31;
  auto [corpus, gt] = generate_synthetic(cfg);

  std::vector<Hit> hits;
  for (const auto& p : gt.planted)
    for (const auto& c : p.copies)
      hits.push_back(canonical_hit(Hit{p.origin.doc_id, p.origin.start, p.origin.end,
                                       c.span.doc_id, c.span.start, c.span.end}));
  canonicalize_hits(hits);

  auto report = evaluate_detection(hits, gt, corpus);
  CHECK(report.recall == doctest::Approx(1.0));
  CHECK(report.precision == doctest::Approx(1.0));
}

TEST_CASE("empty hits give zero recall") {
  GeneratorConfig cfg;
  cfg.n_docs = 10;
  cfg.avg_doc_len = 600;
  cfg.n_planted_passages = 4;
  cfg.seed = 37;
  auto [corpus, gt] = generate_synthetic(cfg);
  auto report = evaluate_detection({}, gt, corpus);
  CHECK(report.recall == 0.0);
}

TEST_CASE("detection recall holds up under light noise") {
  GeneratorConfig cfg;
  cfg.n_docs = 40;
  cfg.avg_doc_len = 2000;
  cfg.n_planted_passages = 30;
  cfg.total_copies = 90;
  cfg.noise_rate = 0.02;
  cfg.passage_len_range = {150, 300};
  cfg.seed = 41;
  auto [corpus, gt] = generate_synthetic(cfg);
  auto hits = find_hits(corpus);
  auto report = evaluate_detection(hits, gt, corpus);
  CHECK(report.recall >= 0.9);
  CHECK(report.precision >= 0.8);
}
