#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reuse/schema.hpp"

namespace reuse {

struct WorkloadPoint {
  std::string subject;        // doc_id or edition_id
  std::int64_t workload = 0;  // reception-edge count or sum_n_reuses
};

struct BucketSample {
  int bucket = 0;  // 0..n_buckets-1
  std::vector<std::string> subjects;
};

struct SamplerConfig {
  int n_buckets = 10;
  int per_bucket = 10;
  std::int64_t min_workload = 1;  // points below this are discarded first
  std::uint64_t seed = 0;
};

// Reception workload of a document: its reception-edge count. Every document
// appears, including zero-workload ones.
std::vector<WorkloadPoint> reception_workloads(const StandardTables& std_tables);

// Top-quotes workload of an edition: the sum of n_reuses over all source
// pieces of its documents, with no length filter.
std::vector<WorkloadPoint> quotes_workloads(const StandardTables& std_tables);

// Splits [log10(min), log10(max)] of the eligible workloads into n_buckets
// equal widths (the maximum lands in the last bucket) and draws up to
// per_bucket subjects per bucket uniformly without replacement.
// Deterministic under seed. Throws when no point is eligible.
std::vector<BucketSample> sample_buckets(const std::vector<WorkloadPoint>& points,
                                         const SamplerConfig& config);

// Bucket index a workload value falls into, given the eligible min/max.
int bucket_of(std::int64_t workload, std::int64_t min_w, std::int64_t max_w, int n_buckets);

}  // namespace reuse
