#include "reuse/sources.hpp"

#include <limits>
#include <stdexcept>
#include <tuple>

namespace reuse {

namespace {

using DateKey = std::tuple<int, int, int>;

constexpr DateKey kUndated{std::numeric_limits<int>::max(), 12, 31};

DateKey date_key(const Document& doc) {
  return doc.pub_date ? doc.pub_date->key() : kUndated;
}

}  // namespace

SourceLabeling identify_sources(const ClusterAssignment& assignment,
                                const std::vector<Piece>& pieces, const Corpus& corpus) {
  std::unordered_map<std::int64_t, const Piece*> piece_by_id;
  piece_by_id.reserve(pieces.size() * 2);
  for (const auto& p : pieces) piece_by_id[p.piece_id] = &p;

  // Earliest date key per cluster.
  std::unordered_map<std::int64_t, DateKey> earliest;
  for (const auto& [piece_id, cluster_id] : assignment.cluster_of) {
    auto it = piece_by_id.find(piece_id);
    if (it == piece_by_id.end())
      throw std::runtime_error("cluster assignment references unknown piece " +
                               std::to_string(piece_id));
    DateKey key = date_key(corpus.doc(it->second->doc_id));
    auto [eit, inserted] = earliest.emplace(cluster_id, key);
    if (!inserted && key < eit->second) eit->second = key;
  }

  SourceLabeling out;
  out.is_source.reserve(assignment.cluster_of.size() * 2);
  for (const auto& [piece_id, cluster_id] : assignment.cluster_of) {
    DateKey key = date_key(corpus.doc(piece_by_id[piece_id]->doc_id));
    out.is_source[piece_id] = (key == earliest[cluster_id]);
  }
  return out;
}

}  // namespace reuse
