#include "reuse/workload.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "reuse/rng.hpp"

namespace reuse {

std::vector<WorkloadPoint> reception_workloads(const StandardTables& std_tables) {
  // destination count per cluster
  std::map<std::int64_t, std::int64_t> members_per_cluster, sources_per_cluster;
  for (const auto& m : std_tables.clustered_defrag_pieces) ++members_per_cluster[m.cluster_id];
  for (const auto& s : std_tables.source_pieces) ++sources_per_cluster[s.cluster_id];

  std::map<std::string, std::int64_t> edges_per_doc;
  for (const auto& d : std_tables.docs) edges_per_doc[d.doc_id] = 0;
  for (const auto& s : std_tables.source_pieces) {
    std::int64_t dests = members_per_cluster[s.cluster_id] - sources_per_cluster[s.cluster_id];
    edges_per_doc[std_tables.piece(s.piece_id).doc_id] += dests;
  }

  std::vector<WorkloadPoint> out;
  out.reserve(edges_per_doc.size());
  for (const auto& [doc, edges] : edges_per_doc) out.push_back({doc, edges});
  return out;
}

std::vector<WorkloadPoint> quotes_workloads(const StandardTables& std_tables) {
  std::map<std::string, std::string> edition_of;
  std::map<std::string, std::int64_t> sum_by_edition;
  for (const auto& d : std_tables.docs) {
    edition_of[d.doc_id] = d.edition_id;
    sum_by_edition[d.edition_id] = 0;
  }
  for (const auto& row : materialize_source_piece_statistics(std_tables))
    sum_by_edition[edition_of[row.doc_id]] += row.n_reuses;

  std::vector<WorkloadPoint> out;
  out.reserve(sum_by_edition.size());
  for (const auto& [edition, sum] : sum_by_edition) out.push_back({edition, sum});
  return out;
}

int bucket_of(std::int64_t workload, std::int64_t min_w, std::int64_t max_w, int n_buckets) {
  if (min_w == max_w) return 0;
  double lo = std::log10(static_cast<double>(min_w));
  double hi = std::log10(static_cast<double>(max_w));
  double width = (hi - lo) / n_buckets;
  auto b = static_cast<int>((std::log10(static_cast<double>(workload)) - lo) / width);
  return std::clamp(b, 0, n_buckets - 1);
}

std::vector<BucketSample> sample_buckets(const std::vector<WorkloadPoint>& points,
                                         const SamplerConfig& config) {
  std::vector<WorkloadPoint> eligible;
  for (const auto& p : points)
    if (p.workload >= config.min_workload) eligible.push_back(p);
  if (eligible.empty()) throw std::runtime_error("no eligible workload points to sample");

  std::sort(eligible.begin(), eligible.end(), [](const WorkloadPoint& a, const WorkloadPoint& b) {
    return a.subject < b.subject;
  });

  std::int64_t min_w = eligible.front().workload, max_w = min_w;
  for (const auto& p : eligible) {
    min_w = std::min(min_w, p.workload);
    max_w = std::max(max_w, p.workload);
  }

  std::vector<std::vector<std::string>> bucket_members(static_cast<std::size_t>(config.n_buckets));
  for (const auto& p : eligible)
    bucket_members[static_cast<std::size_t>(
                       bucket_of(p.workload, min_w, max_w, config.n_buckets))]
        .push_back(p.subject);

  Rng rng(config.seed);
  std::vector<BucketSample> out;
  for (int b = 0; b < config.n_buckets; ++b) {
    auto& members = bucket_members[static_cast<std::size_t>(b)];
    if (members.empty()) continue;
    BucketSample sample;
    sample.bucket = b;
    auto picks = rng.sample_indices(members.size(), static_cast<std::size_t>(config.per_bucket));
    for (std::size_t i : picks) sample.subjects.push_back(members[i]);
    out.push_back(std::move(sample));
  }
  return out;
}

}  // namespace reuse
