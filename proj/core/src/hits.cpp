#include "reuse/hits.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace reuse {

void MatcherConfig::validate() const {
  if (k < 4) throw std::invalid_argument("matcher k must be >= 4");
  if (min_hit_len < k) throw std::invalid_argument("min_hit_len must be >= k");
  if (max_kmer_docfreq < 1) throw std::invalid_argument("max_kmer_docfreq must be >= 1");
  if (xdrop <= 0) throw std::invalid_argument("xdrop must be > 0");
}

Hit canonical_hit(Hit h) {
  if (h.doc_a == h.doc_b) throw std::runtime_error("hit with doc_a == doc_b: " + h.doc_a);
  if (h.start_a >= h.end_a || h.start_b >= h.end_b)
    throw std::runtime_error("hit with empty span on " + h.doc_a + "/" + h.doc_b);
  if (std::tie(h.doc_a, h.start_a) > std::tie(h.doc_b, h.start_b)) {
    std::swap(h.doc_a, h.doc_b);
    std::swap(h.start_a, h.start_b);
    std::swap(h.end_a, h.end_b);
  }
  return h;
}

void canonicalize_hits(std::vector<Hit>& hits) {
  for (auto& h : hits) h = canonical_hit(std::move(h));
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
}

}  // namespace reuse
