#pragma once

#include <cstdint>
#include <utility>

#include "reuse/schema.hpp"

namespace reuse {

// Direct generator of pipeline-shaped tables at benchmark scale, bypassing
// text and detection. Cluster sizes follow a Zipf tail; member pieces land
// in distinct documents; dates are year-granular over a narrow range so
// clusters routinely carry several equally-dated source documents.
struct SynthTablesConfig {
  std::int64_t n_docs = 2000;
  std::int64_t n_clusters = 5000;
  double size_zipf = 1.0;             // cluster-size decay over cluster rank
  std::int64_t max_cluster_size = 300;
  std::int64_t min_cluster_size = 2;
  std::pair<int, int> date_range = {1700, 1724};
  std::uint64_t seed = 0;

  void validate() const;
};

StandardTables generate_synthetic_tables(const SynthTablesConfig& config);

}  // namespace reuse
