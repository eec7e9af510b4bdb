#pragma once

#include <filesystem>
#include <vector>

#include "reuse/cluster.hpp"
#include "reuse/pieces.hpp"
#include "reuse/sources.hpp"

namespace reuse {

// Stage files between CLI runs:
//   pieces CSV   `piece_id,doc_id,start,end`
//   edges CSV    `piece_u,piece_v`
//   clusters CSV `cluster_id,piece_id,is_source`

void write_pieces(const std::vector<Piece>& pieces, const std::filesystem::path& path);
std::vector<Piece> read_pieces(const std::filesystem::path& path);

void write_edges(const std::vector<ReuseEdge>& edges, const std::filesystem::path& path);
std::vector<ReuseEdge> read_edges(const std::filesystem::path& path);

void write_clusters(const ClusterAssignment& assignment, const SourceLabeling& sources,
                    const std::filesystem::path& path);
std::pair<ClusterAssignment, SourceLabeling> read_clusters(const std::filesystem::path& path);

}  // namespace reuse
