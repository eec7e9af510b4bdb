#pragma once

#include <vector>

#include "reuse/document.hpp"
#include "reuse/hits.hpp"

namespace reuse {

// Seed-and-extend fuzzy matcher over normalized text: shared cross-document
// k-mers seed ungapped extensions scored +match/-mismatch with an x-drop
// cutoff; max-scoring spans of normalized length >= min_hit_len become hits,
// decoded back to original offsets. Output is canonical, deduplicated and
// deterministic (seeds are processed in sorted k-mer/doc/offset order).
std::vector<Hit> find_hits(const Corpus& corpus, const MatcherConfig& config = {});

}  // namespace reuse
