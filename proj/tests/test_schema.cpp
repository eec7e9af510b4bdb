#include <doctest.h>

#include <algorithm>
#include <map>

#include "fixtures.hpp"
#include "reuse/schema.hpp"
#include "reuse/synth_tables.hpp"
#include "reuse/tables_io.hpp"

using namespace reuse;

TEST_CASE("build_standard populates the F1 fixture") {
  auto t = fixtures::f1_tables();
  CHECK(t.docs.size() == 4);
  CHECK(t.defrag_pieces.size() == 6);
  CHECK(t.clustered_defrag_pieces.size() == 6);
  REQUIRE(t.source_pieces.size() == 2);
  // sources: (c2=0, piece 0) and (c1=1, piece 2)
  CHECK(t.source_pieces[0] == StandardTables::MemberRow{0, 0});
  CHECK(t.source_pieces[1] == StandardTables::MemberRow{1, 2});
}

TEST_CASE("build_standard rejects pieces of unknown documents") {
  auto corpus = fixtures::f1_corpus();
  auto pieces = fixtures::f1_pieces();
  pieces.push_back({6, "nope", 0, 10});
  auto assignment = fixtures::f1_assignment();
  assignment.cluster_of[6] = 0;
  SourceLabeling labeling;
  for (auto& [piece, cluster] : assignment.cluster_of) labeling.is_source[piece] = false;
  CHECK_THROWS(build_standard(corpus, pieces, assignment, labeling));
}

TEST_CASE("empty pipeline output builds empty tables") {
  Corpus corpus;
  auto t = build_standard(corpus, {}, {}, {});
  CHECK(t.docs.empty());
  CHECK(t.defrag_pieces.empty());
  CHECK(materialize_destination_pieces(t).empty());
  CHECK(materialize_reception_edges(t).empty());
  CHECK(materialize_source_piece_statistics(t).empty());
  auto stats = dataset_stats(t);
  CHECK(stats.n_pieces == 0);
  CHECK_FALSE(stats.avg_source_piece_length);
  CHECK_FALSE(stats.avg_n_reuses);
}

TEST_CASE("destination_pieces is the exclusive right join") {
  auto t = fixtures::f1_tables();
  auto dests = materialize_destination_pieces(t);
  // {(c1=1, p_A1=1), (c1=1, p_C1=4), (c2=0, p_C2=3), (c2=0, p_D=5)} ordered
  REQUIRE(dests.size() == 4);
  CHECK(dests[0] == StandardTables::MemberRow{0, 3});
  CHECK(dests[1] == StandardTables::MemberRow{0, 5});
  CHECK(dests[2] == StandardTables::MemberRow{1, 1});
  CHECK(dests[3] == StandardTables::MemberRow{1, 4});

  CHECK(dests.size() == t.clustered_defrag_pieces.size() - t.source_pieces.size());

  // sources and destinations partition the membership
  auto all = dests;
  all.insert(all.end(), t.source_pieces.begin(), t.source_pieces.end());
  std::sort(all.begin(), all.end());
  CHECK(all == t.clustered_defrag_pieces);
}

TEST_CASE("reception edges of F1") {
  auto t = fixtures::f1_tables();
  auto edges = materialize_reception_edges(t);
  REQUIRE(edges.size() == 4);
  CHECK(edges[0] == ReceptionEdgeRow{"A", 10, 210, "C", 0, 200});
  CHECK(edges[1] == ReceptionEdgeRow{"A", 10, 210, "D", 50, 250});
  CHECK(edges[2] == ReceptionEdgeRow{"B", 100, 300, "A", 500, 650});
  CHECK(edges[3] == ReceptionEdgeRow{"B", 100, 300, "C", 400, 550});
}

TEST_CASE("all-source cluster contributes no reception edges") {
  Corpus corpus;
  corpus.add(fixtures::f1_doc("A", 1700, "alpha"));
  corpus.add(fixtures::f1_doc("B", 1700, "beta"));
  std::vector<Piece> pieces = {{0, "A", 0, 100}, {1, "B", 0, 100}};
  ClusterAssignment a;
  a.cluster_of = {{0, 0}, {1, 0}};
  auto labeling = identify_sources(a, pieces, corpus);
  auto t = build_standard(corpus, pieces, a, labeling);
  CHECK(materialize_reception_edges(t).empty());
  CHECK(materialize_destination_pieces(t).empty());
}

TEST_CASE("n_reuses counts author-disjoint destination documents") {
  auto t = fixtures::f1_tables();
  auto stats = materialize_source_piece_statistics(t);
  REQUIRE(stats.size() == 2);
  // piece 0 = (A,10,210), cluster c2, destinations D(delta) and C(gamma)
  CHECK(stats[0].piece_id == 0);
  CHECK(stats[0].doc_id == "A");
  CHECK(stats[0].piece_length == 200);
  CHECK(stats[0].n_reuses == 2);
  // piece 2 = (B,100,300), cluster c1, destinations A(alpha) and C(gamma)
  CHECK(stats[1].piece_id == 2);
  CHECK(stats[1].n_reuses == 2);
}

TEST_CASE("shared authors suppress n_reuses; empty author sets count") {
  Corpus corpus;
  corpus.add(fixtures::f1_doc("A", 1700, "alpha"));
  Document b = fixtures::f1_doc("B", 1710, "alpha");  // same author as A
  corpus.add(b);
  Document c = fixtures::f1_doc("C", 1712, "");  // no authors
  corpus.add(c);
  std::vector<Piece> pieces = {{0, "A", 0, 200}, {1, "B", 0, 200}, {2, "C", 0, 200}};
  ClusterAssignment a;
  a.cluster_of = {{0, 0}, {1, 0}, {2, 0}};
  auto labeling = identify_sources(a, pieces, corpus);
  auto t = build_standard(corpus, pieces, a, labeling);
  auto stats = materialize_source_piece_statistics(t);
  REQUIRE(stats.size() == 1);
  // B shares alpha, C has no authors: only C counts
  CHECK(stats[0].n_reuses == 1);

  SUBCASE("destinations sharing the source author only") {
    Corpus corpus2;
    corpus2.add(fixtures::f1_doc("A", 1700, "alpha"));
    Document b2 = fixtures::f1_doc("B", 1710, "alpha");
    corpus2.add(b2);
    std::vector<Piece> pieces2 = {{0, "A", 0, 200}, {1, "B", 0, 200}};
    ClusterAssignment a2;
    a2.cluster_of = {{0, 0}, {1, 0}};
    auto labeling2 = identify_sources(a2, pieces2, corpus2);
    auto t2 = build_standard(corpus2, pieces2, a2, labeling2);
    auto stats2 = materialize_source_piece_statistics(t2);
    REQUIRE(stats2.size() == 1);
    CHECK(stats2[0].n_reuses == 0);
  }
}

TEST_CASE("dataset stats over F1") {
  auto t = fixtures::f1_tables();
  auto stats = dataset_stats(t);
  CHECK(stats.n_docs == 4);
  CHECK(stats.n_editions == 4);
  CHECK(stats.n_pieces == 6);
  CHECK(stats.n_clusters == 2);
  CHECK(stats.n_reception_edges == 4);
  CHECK(stats.n_source_pieces == 2);
  CHECK(stats.n_destination_pieces == 4);
  CHECK(*stats.avg_source_piece_length == doctest::Approx(200.0));
  CHECK(*stats.avg_n_reuses == doctest::Approx(2.0));
}

TEST_CASE("reception edge count matches the per-cluster formula") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SynthTablesConfig cfg;
    cfg.n_docs = 120;
    cfg.n_clusters = 150;
    cfg.max_cluster_size = 25;
    cfg.seed = seed;
    auto t = generate_synthetic_tables(cfg);

    std::map<std::int64_t, std::int64_t> members, sources;
    for (const auto& m : t.clustered_defrag_pieces) ++members[m.cluster_id];
    for (const auto& s : t.source_pieces) ++sources[s.cluster_id];
    std::int64_t expected = 0;
    for (const auto& [cluster, m] : members) expected += sources[cluster] * (m - sources[cluster]);

    CHECK(static_cast<std::int64_t>(materialize_reception_edges(t).size()) == expected);
  }
}

TEST_CASE("level datasets nest strictly") {
  auto t = fixtures::f1_tables();
  auto std_ds = materialize_dataset(t, NormalizationLevel::Standard);
  auto int_ds = materialize_dataset(t, NormalizationLevel::Intermediate);
  auto den_ds = materialize_dataset(t, NormalizationLevel::Denorm);
  CHECK(std_ds.tables.size() == 5);
  CHECK(int_ds.tables.size() == 6);
  CHECK(den_ds.tables.size() == 8);
  CHECK(int_ds.has_table("destination_pieces"));
  CHECK(den_ds.has_table("reception_edges"));
  CHECK(den_ds.has_table("source_piece_statistics"));
}

TEST_CASE("dataset CSV round trip") {
  auto t = fixtures::f1_tables();
  auto ds = materialize_dataset(t, NormalizationLevel::Denorm);
  auto dir = std::filesystem::temp_directory_path() / "reuse_tests" / "csv_rt";
  write_dataset_csv(ds, dir);
  auto reloaded = read_dataset_csv(dir);
  CHECK(reloaded.level == NormalizationLevel::Denorm);
  REQUIRE(reloaded.tables.size() == ds.tables.size());
  for (std::size_t i = 0; i < ds.tables.size(); ++i) {
    CHECK(reloaded.tables[i].name == ds.tables[i].name);
    CHECK(table_content_digest(reloaded.tables[i]) == table_content_digest(ds.tables[i]));
  }

  // typed tables reconstruct identically
  auto back = standard_from_dataset(reloaded);
  CHECK(back.docs.size() == t.docs.size());
  CHECK(back.defrag_pieces.size() == t.defrag_pieces.size());
  CHECK(back.clustered_defrag_pieces == t.clustered_defrag_pieces);
  CHECK(back.source_pieces == t.source_pieces);
}
