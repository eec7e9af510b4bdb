#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "reuse/pieces.hpp"
#include "reuse/pipeline_io.hpp"
#include "reuse/rng.hpp"

using namespace reuse;

TEST_CASE("overlapping similar-length spans merge") {
  // spans [100,300) and [110,310): overlap 190 >= 0.8*200, ratio 1 <= 1.25
  std::vector<Hit> hits = {
      {"A", 0, 200, "B", 100, 300},
      {"A", 10, 210, "B", 110, 310},
  };
  auto result = defragment(hits);
  // both sides merge pairwise: one piece in A, one in B
  REQUIRE(result.pieces.size() == 2);
  CHECK(result.pieces[0].doc_id == "A");
  CHECK(result.pieces[0].start == 0);
  CHECK(result.pieces[0].end == 210);
  CHECK(result.pieces[1].doc_id == "B");
  CHECK(result.pieces[1].start == 100);
  CHECK(result.pieces[1].end == 310);
  CHECK(result.edges == std::vector<ReuseEdge>{{0, 1}});
}

TEST_CASE("small pieces do not merge into much larger overlapping pieces") {
  // ratio 4 > 1.25: stays separate
  std::vector<Hit> hits = {
      {"A", 0, 100, "B", 0, 100},
      {"A", 0, 400, "C", 0, 400},
  };
  auto result = defragment(hits);
  std::size_t in_a = 0;
  for (const auto& p : result.pieces)
    if (p.doc_id == "A") ++in_a;
  CHECK(in_a == 2);
}

TEST_CASE("single hit produces two pieces and one edge") {
  std::vector<Hit> hits = {{"A", 0, 200, "B", 50, 250}};
  auto result = defragment(hits);
  REQUIRE(result.pieces.size() == 2);
  REQUIRE(result.edges.size() == 1);
  CHECK(result.pieces[0].piece_id == 0);
  CHECK(result.pieces[1].piece_id == 1);
}

TEST_CASE("piece ids follow (doc_id, start, end) order") {
  std::vector<Hit> hits = {
      {"B", 500, 700, "C", 0, 200},
      {"A", 10, 210, "B", 100, 300},
  };
  auto result = defragment(hits);
  std::vector<Piece> sorted = result.pieces;
  std::sort(sorted.begin(), sorted.end(), [](const Piece& a, const Piece& b) {
    return std::tie(a.doc_id, a.start, a.end) < std::tie(b.doc_id, b.start, b.end);
  });
  for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i].piece_id == result.pieces[i].piece_id);
  for (std::size_t i = 0; i < result.pieces.size(); ++i)
    CHECK(result.pieces[i].piece_id == static_cast<std::int64_t>(i));
}

TEST_CASE("defragmentation never shrinks a span") {
  Rng rng(51);
  std::vector<Hit> hits;
  for (int i = 0; i < 300; ++i) {
    std::string da = "d" + std::to_string(rng.below(6));
    std::string db = "d" + std::to_string(rng.below(6));
    if (da == db) continue;
    std::int64_t sa = static_cast<std::int64_t>(rng.below(2000));
    std::int64_t sb = static_cast<std::int64_t>(rng.below(2000));
    std::int64_t len = 100 + static_cast<std::int64_t>(rng.below(200));
    hits.push_back(canonical_hit(Hit{da, sa, sa + len, db, sb, sb + len}));
  }
  canonicalize_hits(hits);
  auto result = defragment(hits);

  auto covering = [&](const std::string& doc, std::int64_t s, std::int64_t e) {
    for (const auto& p : result.pieces)
      if (p.doc_id == doc && p.start <= s && e <= p.end) return true;
    return false;
  };
  for (const auto& h : hits) {
    CHECK(covering(h.doc_a, h.start_a, h.end_a));
    CHECK(covering(h.doc_b, h.start_b, h.end_b));
  }

  // edge endpoints exist and there are no self loops or duplicates
  for (const auto& e : result.edges) {
    CHECK(e.u < e.v);
    CHECK(e.v < static_cast<std::int64_t>(result.pieces.size()));
  }
  auto edges = result.edges;
  std::sort(edges.begin(), edges.end());
  CHECK(std::adjacent_find(edges.begin(), edges.end()) == edges.end());
}

TEST_CASE("hit connectivity survives the remap") {
  std::vector<Hit> hits = {
      {"A", 0, 200, "B", 100, 300},
      {"A", 10, 210, "B", 110, 310},
      {"A", 5, 205, "C", 40, 240},
  };
  auto result = defragment(hits);
  // A's three raw spans merge into one piece connected to both B and C
  std::size_t a_pieces = 0;
  for (const auto& p : result.pieces)
    if (p.doc_id == "A") ++a_pieces;
  CHECK(a_pieces == 1);
  CHECK(result.edges.size() == 2);
}

TEST_CASE("defrag config is validated") {
  DefragConfig bad;
  bad.min_overlap_frac = 0;
  CHECK_THROWS(defragment({}, bad));
  bad = DefragConfig{};
  bad.max_len_ratio = 0.5;
  CHECK_THROWS(defragment({}, bad));
}

TEST_CASE("pipeline stage files round trip") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "reuse_tests" / "pipeline_io";
  fs::create_directories(dir);

  std::vector<Hit> hits = {
      {"A", 0, 200, "B", 100, 300},
      {"A", 10, 210, "C", 40, 240},
  };
  auto result = defragment(hits);
  write_pieces(result.pieces, dir / "pieces.csv");
  write_edges(result.edges, dir / "edges.csv");
  CHECK(read_pieces(dir / "pieces.csv") == result.pieces);
  CHECK(read_edges(dir / "edges.csv") == result.edges);

  ClusterAssignment assignment;
  assignment.cluster_of = {{0, 0}, {1, 0}, {2, 0}};
  assignment.n_clusters = 1;
  SourceLabeling labeling;
  labeling.is_source = {{0, true}, {1, false}, {2, false}};
  write_clusters(assignment, labeling, dir / "clusters.csv");
  auto [read_assignment, read_labeling] = read_clusters(dir / "clusters.csv");
  CHECK(read_assignment.cluster_of == assignment.cluster_of);
  CHECK(read_assignment.n_clusters == 1);
  CHECK(read_labeling.is_source == labeling.is_source);
}

TEST_CASE("malformed stage files are rejected with row numbers") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "reuse_tests" / "pipeline_io_bad";
  fs::create_directories(dir);

  std::ofstream(dir / "pieces.csv") << "piece_id,doc_id,start,end\n0,A,50,50\n";
  CHECK_THROWS_WITH_AS(read_pieces(dir / "pieces.csv"), doctest::Contains("row 2"),
                       std::runtime_error);

  std::ofstream(dir / "edges.csv") << "piece_u,piece_v\n3,3\n";
  CHECK_THROWS_WITH_AS(read_edges(dir / "edges.csv"), doctest::Contains("self-loop"),
                       std::runtime_error);

  std::ofstream(dir / "clusters.csv") << "cluster_id,piece_id,is_source\n0,1,2\n";
  CHECK_THROWS(read_clusters(dir / "clusters.csv"));

  std::ofstream(dir / "bad_header.csv") << "nope\n";
  CHECK_THROWS_WITH_AS(read_pieces(dir / "bad_header.csv"), doctest::Contains("header"),
                       std::runtime_error);
}
