#include "reuse/cluster.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "reuse/rng.hpp"

namespace reuse {

void ClusterConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
}

ClusterAssignment chinese_whispers(const std::vector<Piece>& pieces,
                                   const std::vector<ReuseEdge>& edges,
                                   const ClusterConfig& config) {
  config.validate();

  // Dense node ids over edge-incident pieces, in ascending piece_id order.
  std::vector<std::int64_t> node_piece;
  {
    std::vector<char> known(pieces.size() ? pieces.size() : 1, 0);
    std::map<std::int64_t, std::size_t> piece_pos;
    for (std::size_t i = 0; i < pieces.size(); ++i) piece_pos[pieces[i].piece_id] = i;
    for (const auto& e : edges) {
      if (!piece_pos.count(e.u) || !piece_pos.count(e.v))
        throw std::runtime_error("edge endpoint references unknown piece");
    }
    std::map<std::int64_t, char> incident;
    for (const auto& e : edges) {
      incident[e.u] = 1;
      incident[e.v] = 1;
    }
    node_piece.reserve(incident.size());
    for (const auto& [pid, _] : incident) node_piece.push_back(pid);
  }

  std::unordered_map<std::int64_t, std::size_t> node_of;
  node_of.reserve(node_piece.size() * 2);
  for (std::size_t i = 0; i < node_piece.size(); ++i) node_of[node_piece[i]] = i;

  // Adjacency from the edge set (duplicates collapse), neighbours sorted so
  // the result does not depend on input edge order.
  std::vector<std::vector<std::uint32_t>> adj(node_piece.size());
  for (const auto& e : edges) {
    auto u = static_cast<std::uint32_t>(node_of[e.u]);
    auto v = static_cast<std::uint32_t>(node_of[e.v]);
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }

  std::vector<std::uint32_t> label(node_piece.size());
  for (std::size_t i = 0; i < label.size(); ++i) label[i] = static_cast<std::uint32_t>(i);

  Rng rng(config.seed);
  std::vector<std::uint32_t> order(node_piece.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);

  std::unordered_map<std::uint32_t, std::uint32_t> counts;
  for (std::int64_t iter = 0; iter < config.max_iterations; ++iter) {
    rng.shuffle(order);
    bool changed = false;
    for (std::uint32_t node : order) {
      if (adj[node].empty()) continue;
      counts.clear();
      for (std::uint32_t nbr : adj[node]) ++counts[label[nbr]];
      std::uint32_t best_label = label[node];
      std::uint32_t best_count = 0;
      for (std::uint32_t nbr : adj[node]) {  // iterate sorted neighbours, not the hash map
        std::uint32_t l = label[nbr];
        std::uint32_t c = counts[l];
        if (c > best_count || (c == best_count && l < best_label)) {
          best_count = c;
          best_label = l;
        }
      }
      if (best_label != label[node]) {
        label[node] = best_label;
        changed = true;
      }
    }
    if (!changed) break;
  }

  // Renumber labels densely in order of each cluster's smallest piece_id
  // (node_piece is ascending, so first sighting is the smallest member).
  ClusterAssignment out;
  std::unordered_map<std::uint32_t, std::int64_t> dense;
  for (std::size_t i = 0; i < node_piece.size(); ++i) {
    auto [it, inserted] = dense.emplace(label[i], out.n_clusters);
    if (inserted) ++out.n_clusters;
    out.cluster_of[node_piece[i]] = it->second;
  }
  return out;
}

}  // namespace reuse
