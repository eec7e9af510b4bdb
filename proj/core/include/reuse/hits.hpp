#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace reuse {

// An undirected pair of similar pieces. Offsets refer to the documents'
// ORIGINAL text, 0-based half-open. Canonical form orders the sides so that
// (doc_a, start_a) <= (doc_b, start_b) lexicographically.
struct Hit {
  std::string doc_a;
  std::int64_t start_a = 0;
  std::int64_t end_a = 0;
  std::string doc_b;
  std::int64_t start_b = 0;
  std::int64_t end_b = 0;

  friend bool operator==(const Hit&, const Hit&) = default;
  friend auto operator<=>(const Hit&, const Hit&) = default;
};

struct MatcherConfig {
  std::int64_t k = 10;                    // k-mer length on normalized text
  std::int64_t max_kmer_docfreq = 1000;   // skip seeds seen in more documents
  std::int64_t xdrop = 10;                // extension stops when score falls this far below its max
  std::int64_t match_score = 1;
  std::int64_t mismatch_score = -1;
  std::int64_t min_hit_len = 100;         // minimum normalized match length

  void validate() const;  // k >= 4, min_hit_len >= k
};

// Swaps sides if needed so the hit is in canonical order. Throws on
// doc_a == doc_b or an empty span.
Hit canonical_hit(Hit h);

// Sorts and removes identical 6-tuples.
void canonicalize_hits(std::vector<Hit>& hits);

}  // namespace reuse
