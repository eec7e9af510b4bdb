#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "reuse/cluster.hpp"
#include "reuse/document.hpp"
#include "reuse/pieces.hpp"

namespace reuse {

struct SourceLabeling {
  // Defined for every clustered piece.
  std::unordered_map<std::int64_t, bool> is_source;
};

// Phase 3: within each cluster, the pieces of the earliest-dated document(s)
// are sources; everything else is a destination. Missing publication dates
// sort after every real date, so an undated document is never a source
// unless the whole cluster is undated (in which case every piece is a source
// and the cluster yields no destinations). Throws on pieces referencing
// unknown documents.
SourceLabeling identify_sources(const ClusterAssignment& assignment,
                                const std::vector<Piece>& pieces, const Corpus& corpus);

}  // namespace reuse
