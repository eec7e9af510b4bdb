#pragma once

// Hand-built two-cluster fixture used across the suites:
//   docs  B(1700, beta), A(1705, alpha), C(1710, gamma), D(1715, delta),
//         one edition each
//   c1: (B,100,300) source; (A,500,650), (C,400,550) destinations
//   c2: (A,10,210) source;  (D,50,250),  (C,0,200)  destinations
//
// Piece ids follow (doc_id, start, end) order:
//   0=(A,10,210) 1=(A,500,650) 2=(B,100,300) 3=(C,0,200) 4=(C,400,550)
//   5=(D,50,250)

#include <string>
#include <vector>

#include "reuse/cluster.hpp"
#include "reuse/document.hpp"
#include "reuse/pieces.hpp"
#include "reuse/schema.hpp"
#include "reuse/sources.hpp"

namespace reuse::fixtures {

inline Document f1_doc(const std::string& id, int year, const std::string& author) {
  Document d;
  d.doc_id = id;
  d.collection = "books";
  d.title = "title " + id;
  d.pub_date = PubDate{year, {}, {}};
  if (!author.empty()) d.authors = {author};
  d.edition_id = "ed_" + id;
  d.text = std::string(1000, 'x');
  return d;
}

inline Corpus f1_corpus() {
  Corpus corpus;
  corpus.add(f1_doc("A", 1705, "alpha"));
  corpus.add(f1_doc("B", 1700, "beta"));
  corpus.add(f1_doc("C", 1710, "gamma"));
  corpus.add(f1_doc("D", 1715, "delta"));
  return corpus;
}

inline std::vector<Piece> f1_pieces() {
  return {
      {0, "A", 10, 210}, {1, "A", 500, 650}, {2, "B", 100, 300},
      {3, "C", 0, 200},  {4, "C", 400, 550}, {5, "D", 50, 250},
  };
}

inline ClusterAssignment f1_assignment() {
  ClusterAssignment a;
  a.cluster_of = {{2, 1}, {1, 1}, {4, 1}, {0, 0}, {5, 0}, {3, 0}};
  a.n_clusters = 2;
  return a;
}

inline StandardTables f1_tables() {
  Corpus corpus = f1_corpus();
  auto pieces = f1_pieces();
  auto assignment = f1_assignment();
  SourceLabeling labeling = identify_sources(assignment, pieces, corpus);
  return build_standard(corpus, pieces, assignment, labeling);
}

}  // namespace reuse::fixtures
