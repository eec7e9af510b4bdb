#pragma once

#include <filesystem>
#include <vector>

#include "reuse/hits.hpp"

namespace reuse {

// Hits CSV: header `doc_a,start_a,end_a,doc_b,start_b,end_b`; offsets are
// original-text, 0-based half-open. Rows are canonicalized and deduplicated
// on ingest; malformed rows and invariant violations (doc_a == doc_b,
// start >= end) report their row number.
std::vector<Hit> ingest_hits(const std::filesystem::path& path);
void write_hits(const std::vector<Hit>& hits, const std::filesystem::path& path);

}  // namespace reuse
