#include "reuse/pieces.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace reuse {

void DefragConfig::validate() const {
  if (!(min_overlap_frac > 0.0 && min_overlap_frac <= 1.0))
    throw std::invalid_argument("min_overlap_frac must be in (0,1]");
  if (max_len_ratio < 1.0) throw std::invalid_argument("max_len_ratio must be >= 1");
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct RawSpan {
  std::string doc_id;
  std::int64_t start, end;
  bool operator<(const RawSpan& o) const {
    return std::tie(doc_id, start, end) < std::tie(o.doc_id, o.start, o.end);
  }
  bool operator==(const RawSpan& o) const = default;
};

bool merge_candidates(const RawSpan& a, const RawSpan& b, const DefragConfig& cfg) {
  std::int64_t overlap = std::min(a.end, b.end) - std::max(a.start, b.start);
  if (overlap <= 0) return false;
  std::int64_t la = a.end - a.start, lb = b.end - b.start;
  std::int64_t shorter = std::min(la, lb), longer = std::max(la, lb);
  if (static_cast<double>(overlap) < cfg.min_overlap_frac * static_cast<double>(shorter))
    return false;
  return static_cast<double>(longer) <= cfg.max_len_ratio * static_cast<double>(shorter);
}

}  // namespace

DefragResult defragment(const std::vector<Hit>& hits, const DefragConfig& config) {
  config.validate();

  // Distinct raw spans from all hit sides, sorted.
  std::vector<RawSpan> raw;
  raw.reserve(hits.size() * 2);
  for (const auto& h : hits) {
    raw.push_back({h.doc_a, h.start_a, h.end_a});
    raw.push_back({h.doc_b, h.start_b, h.end_b});
  }
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());

  // Merge-candidate relation is evaluated on raw spans only (no fixpoint
  // re-evaluation on merged spans). Candidates must overlap, so a sweep over
  // start-sorted spans per document suffices.
  UnionFind uf(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = i + 1;
         j < raw.size() && raw[j].doc_id == raw[i].doc_id && raw[j].start < raw[i].end; ++j) {
      if (merge_candidates(raw[i], raw[j], config)) uf.unite(i, j);
    }
  }

  // Each group becomes one piece spanning [min start, max end].
  std::vector<std::int64_t> group_of(raw.size());
  std::map<std::size_t, RawSpan> group_span;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::size_t root = uf.find(i);
    auto [it, inserted] = group_span.emplace(root, raw[i]);
    if (!inserted) {
      it->second.start = std::min(it->second.start, raw[i].start);
      it->second.end = std::max(it->second.end, raw[i].end);
    }
  }

  DefragResult result;
  {
    std::vector<std::pair<RawSpan, std::size_t>> spans;  // (span, root)
    spans.reserve(group_span.size());
    for (const auto& [root, span] : group_span) spans.push_back({span, root});
    std::sort(spans.begin(), spans.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::map<std::size_t, std::int64_t> piece_of_root;
    result.pieces.reserve(spans.size());
    for (std::size_t i = 0; i < spans.size(); ++i) {
      piece_of_root[spans[i].second] = static_cast<std::int64_t>(i);
      result.pieces.push_back(Piece{static_cast<std::int64_t>(i), spans[i].first.doc_id,
                                    spans[i].first.start, spans[i].first.end});
    }
    for (std::size_t i = 0; i < raw.size(); ++i) group_of[i] = piece_of_root[uf.find(i)];
  }

  // Remap hits to edges between merged pieces.
  {
    std::map<RawSpan, std::size_t> raw_index;
    for (std::size_t i = 0; i < raw.size(); ++i) raw_index[raw[i]] = i;
    std::vector<ReuseEdge> edges;
    edges.reserve(hits.size());
    for (const auto& h : hits) {
      std::int64_t u = group_of[raw_index.at({h.doc_a, h.start_a, h.end_a})];
      std::int64_t v = group_of[raw_index.at({h.doc_b, h.start_b, h.end_b})];
      if (u == v) continue;
      edges.push_back({std::min(u, v), std::max(u, v)});
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    result.edges = std::move(edges);
  }
  return result;
}

}  // namespace reuse
