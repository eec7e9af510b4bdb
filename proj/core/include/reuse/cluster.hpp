#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "reuse/pieces.hpp"

namespace reuse {

struct ClusterConfig {
  std::int64_t max_iterations = 20;
  std::uint64_t seed = 0;

  void validate() const;
};

struct ClusterAssignment {
  // Covers every piece incident to at least one edge. Cluster ids are dense,
  // numbered in order of each cluster's smallest member piece_id.
  std::unordered_map<std::int64_t, std::int64_t> cluster_of;

  std::int64_t n_clusters = 0;
};

// Chinese Whispers label propagation: every node starts with its own label;
// nodes are visited in a seeded random order and adopt the label with the
// highest summed edge weight among their neighbours (unit weights, ties to
// the smallest label), updating asynchronously; stops early once an
// iteration changes nothing. Deterministic for a fixed seed and independent
// of edge order.
ClusterAssignment chinese_whispers(const std::vector<Piece>& pieces,
                                   const std::vector<ReuseEdge>& edges,
                                   const ClusterConfig& config = {});

}  // namespace reuse
