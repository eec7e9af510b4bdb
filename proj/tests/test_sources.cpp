#include <doctest.h>

#include "fixtures.hpp"
#include "reuse/sources.hpp"

using namespace reuse;

TEST_CASE("earliest-dated document's pieces are the sources") {
  auto corpus = fixtures::f1_corpus();
  auto pieces = fixtures::f1_pieces();
  auto assignment = fixtures::f1_assignment();
  auto labeling = identify_sources(assignment, pieces, corpus);

  CHECK(labeling.is_source.at(2));        // (B,100,300), 1700, cluster c1
  CHECK_FALSE(labeling.is_source.at(1));  // (A,500,650), 1705
  CHECK_FALSE(labeling.is_source.at(4));  // (C,400,550), 1710
  CHECK(labeling.is_source.at(0));        // (A,10,210), 1705, cluster c2
  CHECK_FALSE(labeling.is_source.at(5));  // (D,50,250), 1715
  CHECK_FALSE(labeling.is_source.at(3));  // (C,0,200), 1710
}

TEST_CASE("equally dated documents are all sources") {
  Corpus corpus;
  corpus.add(fixtures::f1_doc("A", 1700, "alpha"));
  corpus.add(fixtures::f1_doc("B", 1700, "beta"));
  corpus.add(fixtures::f1_doc("C", 1710, "gamma"));
  std::vector<Piece> pieces = {{0, "A", 0, 100}, {1, "B", 0, 100}, {2, "C", 0, 100}};
  ClusterAssignment a;
  a.cluster_of = {{0, 0}, {1, 0}, {2, 0}};
  a.n_clusters = 1;
  auto labeling = identify_sources(a, pieces, corpus);
  CHECK(labeling.is_source.at(0));
  CHECK(labeling.is_source.at(1));
  CHECK_FALSE(labeling.is_source.at(2));
}

TEST_CASE("year-only date equals January first of that year") {
  Corpus corpus;
  Document a = fixtures::f1_doc("A", 1700, "alpha");  // year only
  Document b = fixtures::f1_doc("B", 1700, "beta");
  b.pub_date = PubDate{1700, 1, 1};
  corpus.add(a);
  corpus.add(b);
  std::vector<Piece> pieces = {{0, "A", 0, 100}, {1, "B", 0, 100}};
  ClusterAssignment asg;
  asg.cluster_of = {{0, 0}, {1, 0}};
  asg.n_clusters = 1;
  auto labeling = identify_sources(asg, pieces, corpus);
  CHECK(labeling.is_source.at(0));
  CHECK(labeling.is_source.at(1));
}

TEST_CASE("undated documents are never sources unless the cluster is all undated") {
  Corpus corpus;
  Document u = fixtures::f1_doc("U", 1700, "u");
  u.pub_date.reset();
  Document v = fixtures::f1_doc("V", 1710, "v");
  Document w = fixtures::f1_doc("W", 1700, "w");
  w.pub_date.reset();
  corpus.add(u);
  corpus.add(v);
  corpus.add(w);

  SUBCASE("dated document wins") {
    std::vector<Piece> pieces = {{0, "U", 0, 100}, {1, "V", 0, 100}};
    ClusterAssignment a;
    a.cluster_of = {{0, 0}, {1, 0}};
    auto labeling = identify_sources(a, pieces, corpus);
    CHECK_FALSE(labeling.is_source.at(0));
    CHECK(labeling.is_source.at(1));
  }

  SUBCASE("all-undated cluster makes every piece a source") {
    std::vector<Piece> pieces = {{0, "U", 0, 100}, {1, "W", 0, 100}};
    ClusterAssignment a;
    a.cluster_of = {{0, 0}, {1, 0}};
    auto labeling = identify_sources(a, pieces, corpus);
    CHECK(labeling.is_source.at(0));
    CHECK(labeling.is_source.at(1));
  }
}

TEST_CASE("unknown documents are rejected") {
  Corpus corpus;
  corpus.add(fixtures::f1_doc("A", 1700, "alpha"));
  std::vector<Piece> pieces = {{0, "Z", 0, 100}};
  ClusterAssignment a;
  a.cluster_of = {{0, 0}};
  CHECK_THROWS(identify_sources(a, pieces, corpus));
}

TEST_CASE("a document never holds both a source and a destination in one cluster") {
  // two pieces of the same earliest doc in one cluster: both are sources
  Corpus corpus;
  corpus.add(fixtures::f1_doc("A", 1700, "alpha"));
  corpus.add(fixtures::f1_doc("B", 1705, "beta"));
  std::vector<Piece> pieces = {{0, "A", 0, 100}, {1, "A", 200, 300}, {2, "B", 0, 100}};
  ClusterAssignment a;
  a.cluster_of = {{0, 0}, {1, 0}, {2, 0}};
  auto labeling = identify_sources(a, pieces, corpus);
  CHECK(labeling.is_source.at(0));
  CHECK(labeling.is_source.at(1));
  CHECK_FALSE(labeling.is_source.at(2));
}
