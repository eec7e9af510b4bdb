#include "reuse/tasks.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace reuse {

namespace {

struct PieceRef {
  std::int64_t piece_id = 0;
  std::string doc_id;
  std::int64_t start = 0;
  std::int64_t end = 0;
};

std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// (cluster_id, piece_id) pairs from a membership-table filter.
std::vector<std::pair<std::int64_t, std::int64_t>> gather_members(
    const DatasetHandle& h, std::string_view table, const std::vector<RowId>& rows,
    QueryContext& ctx) {
  std::vector<std::int64_t> clusters, pieces;
  h.gather_int(table, "cluster_id", rows, clusters, ctx);
  h.gather_int(table, "piece_id", rows, pieces, ctx);
  std::vector<std::pair<std::int64_t, std::int64_t>> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = {clusters[i], pieces[i]};
  return out;
}

// Offsets and documents for a set of piece ids.
std::map<std::int64_t, PieceRef> lookup_pieces(const DatasetHandle& h,
                                               const std::vector<std::int64_t>& piece_ids,
                                               QueryContext& ctx) {
  auto rows = h.filter_in_int("defrag_pieces", "piece_id", piece_ids, ctx);
  std::vector<std::int64_t> ids, starts, ends;
  std::vector<std::string> docs;
  h.gather_int("defrag_pieces", "piece_id", rows, ids, ctx);
  h.gather_str("defrag_pieces", "doc_id", rows, docs, ctx);
  h.gather_int("defrag_pieces", "start", rows, starts, ctx);
  h.gather_int("defrag_pieces", "end", rows, ends, ctx);
  std::map<std::int64_t, PieceRef> out;
  for (std::size_t i = 0; i < rows.size(); ++i)
    out[ids[i]] = PieceRef{ids[i], docs[i], starts[i], ends[i]};
  return out;
}

// The destination_pieces relation recomputed from the normalized tables:
// every clustered piece whose piece_id is not in source_pieces. This is a
// whole-table anti-join (the cluster filter is applied afterwards), which is
// what makes Standard-level queries expensive.
std::vector<std::pair<std::int64_t, std::int64_t>> destination_subquery(
    const DatasetHandle& h, QueryContext& ctx) {
  auto all_source_rows = h.filter_not_in_int("source_pieces", "piece_id", {}, ctx);
  std::vector<std::int64_t> source_ids;
  h.gather_int("source_pieces", "piece_id", all_source_rows, source_ids, ctx);
  std::sort(source_ids.begin(), source_ids.end());
  auto dest_rows = h.filter_not_in_int("clustered_defrag_pieces", "piece_id", source_ids, ctx);
  return gather_members(h, "clustered_defrag_pieces", dest_rows, ctx);
}

// Destination (cluster, piece) pairs restricted to the given clusters.
std::vector<std::pair<std::int64_t, std::int64_t>> destinations_for_clusters(
    const DatasetHandle& h, const std::vector<std::int64_t>& clusters, QueryContext& ctx) {
  if (h.level() == NormalizationLevel::Standard) {
    auto all = destination_subquery(h, ctx);
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (auto& m : all) {
      ctx.tick();
      if (std::binary_search(clusters.begin(), clusters.end(), m.first)) out.push_back(m);
    }
    return out;
  }
  auto rows = h.filter_in_int("destination_pieces", "cluster_id", clusters, ctx);
  return gather_members(h, "destination_pieces", rows, ctx);
}

// Source (cluster, piece) pairs for pieces of the given candidate piece ids.
std::vector<std::pair<std::int64_t, std::int64_t>> source_membership(
    const DatasetHandle& h, const std::vector<std::int64_t>& piece_ids, QueryContext& ctx) {
  auto rows = h.filter_in_int("source_pieces", "piece_id", piece_ids, ctx);
  return gather_members(h, "source_pieces", rows, ctx);
}

std::map<std::string, std::set<std::string>> author_sets(
    const DatasetHandle& h, const std::vector<std::string>& docs, QueryContext& ctx) {
  auto rows = h.filter_in_str("doc_authors", "doc_id", docs, ctx);
  std::vector<std::string> doc_ids, authors;
  h.gather_str("doc_authors", "doc_id", rows, doc_ids, ctx);
  h.gather_str("doc_authors", "author_id", rows, authors, ctx);
  std::map<std::string, std::set<std::string>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) out[doc_ids[i]].insert(authors[i]);
  return out;
}

bool disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else return false;
  }
  return true;
}

ReceptionResult reception_denorm(const DatasetHandle& h, const std::string& doc,
                                 QueryContext& ctx) {
  auto rows = h.filter_eq_str("reception_edges", "src_doc_id", doc, ctx);
  std::vector<std::int64_t> src_start, src_end, dst_start, dst_end;
  std::vector<std::string> src_doc, dst_doc;
  h.gather_str("reception_edges", "src_doc_id", rows, src_doc, ctx);
  h.gather_int("reception_edges", "src_start", rows, src_start, ctx);
  h.gather_int("reception_edges", "src_end", rows, src_end, ctx);
  h.gather_str("reception_edges", "dst_doc_id", rows, dst_doc, ctx);
  h.gather_int("reception_edges", "dst_start", rows, dst_start, ctx);
  h.gather_int("reception_edges", "dst_end", rows, dst_end, ctx);

  ReceptionResult result;
  result.rows.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    result.rows.push_back({src_doc[i], src_start[i], src_end[i], dst_doc[i], dst_start[i],
                           dst_end[i]});
  sort_reception_rows(result.rows);
  return result;
}

ReceptionResult reception_joined(const DatasetHandle& h, const std::string& doc,
                                 QueryContext& ctx) {
  // pieces of the query document
  auto doc_rows = h.filter_eq_str("defrag_pieces", "doc_id", doc, ctx);
  std::vector<std::int64_t> doc_piece_ids, starts, ends;
  h.gather_int("defrag_pieces", "piece_id", doc_rows, doc_piece_ids, ctx);
  h.gather_int("defrag_pieces", "start", doc_rows, starts, ctx);
  h.gather_int("defrag_pieces", "end", doc_rows, ends, ctx);
  std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> span_of;
  for (std::size_t i = 0; i < doc_rows.size(); ++i)
    span_of[doc_piece_ids[i]] = {starts[i], ends[i]};

  // which of them source a cluster
  auto src_members = source_membership(h, sorted_unique(doc_piece_ids), ctx);
  if (src_members.empty()) return {};

  std::map<std::int64_t, std::vector<std::int64_t>> src_pieces_by_cluster;
  std::vector<std::int64_t> clusters;
  for (auto& [cluster, piece] : src_members) {
    src_pieces_by_cluster[cluster].push_back(piece);
    clusters.push_back(cluster);
  }
  clusters = sorted_unique(std::move(clusters));

  // destination pieces of those clusters, with their offsets
  auto dests = destinations_for_clusters(h, clusters, ctx);
  std::vector<std::int64_t> dest_ids;
  dest_ids.reserve(dests.size());
  for (auto& [cluster, piece] : dests) dest_ids.push_back(piece);
  auto dest_refs = lookup_pieces(h, sorted_unique(std::move(dest_ids)), ctx);

  ReceptionResult result;
  for (auto& [cluster, dst_piece] : dests) {
    auto sit = src_pieces_by_cluster.find(cluster);
    if (sit == src_pieces_by_cluster.end()) continue;
    const PieceRef& dst = dest_refs.at(dst_piece);
    for (std::int64_t src_piece : sit->second) {
      ctx.tick();
      auto [s, e] = span_of.at(src_piece);
      result.rows.push_back({doc, s, e, dst.doc_id, dst.start, dst.end});
    }
  }
  sort_reception_rows(result.rows);
  return result;
}

}  // namespace

void sort_reception_rows(std::vector<ReceptionEdgeRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const ReceptionEdgeRow& a, const ReceptionEdgeRow& b) {
    return std::tie(a.dst_doc_id, a.dst_start, a.src_start, a.dst_end, a.src_end, a.src_doc_id) <
           std::tie(b.dst_doc_id, b.dst_start, b.src_start, b.dst_end, b.src_end, b.src_doc_id);
  });
}

ReceptionResult reception(const DatasetHandle& handle, const std::string& doc,
                          QueryContext& ctx) {
  if (handle.is_closed()) throw std::logic_error("dataset handle is closed");
  if (handle.level() == NormalizationLevel::Denorm) return reception_denorm(handle, doc, ctx);
  return reception_joined(handle, doc, ctx);
}

std::vector<QuoteRow> top_quotes(const DatasetHandle& handle, const std::string& edition,
                                 QueryContext& ctx, std::int64_t limit) {
  if (handle.is_closed()) throw std::logic_error("dataset handle is closed");

  auto doc_rows = handle.filter_eq_str("docs", "edition_id", edition, ctx);
  std::vector<std::string> docs_e;
  handle.gather_str("docs", "doc_id", doc_rows, docs_e, ctx);
  std::sort(docs_e.begin(), docs_e.end());
  if (docs_e.empty()) return {};

  std::vector<QuoteRow> quotes;

  if (handle.level() == NormalizationLevel::Denorm) {
    auto rows = handle.filter_in_str("source_piece_statistics", "doc_id", docs_e, ctx);
    std::vector<std::int64_t> piece_ids, starts, ends, lengths, reuses;
    std::vector<std::string> doc_ids;
    handle.gather_int("source_piece_statistics", "piece_id", rows, piece_ids, ctx);
    handle.gather_str("source_piece_statistics", "doc_id", rows, doc_ids, ctx);
    handle.gather_int("source_piece_statistics", "start", rows, starts, ctx);
    handle.gather_int("source_piece_statistics", "end", rows, ends, ctx);
    handle.gather_int("source_piece_statistics", "piece_length", rows, lengths, ctx);
    handle.gather_int("source_piece_statistics", "n_reuses", rows, reuses, ctx);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      ctx.tick();
      if (lengths[i] < kQuoteMinLen || lengths[i] > kQuoteMaxLen || reuses[i] < 1) continue;
      quotes.push_back({piece_ids[i], doc_ids[i], starts[i], ends[i], lengths[i], reuses[i]});
    }
  } else {
    // candidate source pieces from the edition's documents, length-filtered
    auto piece_rows = handle.filter_in_str("defrag_pieces", "doc_id", docs_e, ctx);
    std::vector<std::int64_t> ids, starts, ends;
    std::vector<std::string> piece_docs;
    handle.gather_int("defrag_pieces", "piece_id", piece_rows, ids, ctx);
    handle.gather_str("defrag_pieces", "doc_id", piece_rows, piece_docs, ctx);
    handle.gather_int("defrag_pieces", "start", piece_rows, starts, ctx);
    handle.gather_int("defrag_pieces", "end", piece_rows, ends, ctx);

    std::map<std::int64_t, PieceRef> candidates;
    std::vector<std::int64_t> candidate_ids;
    for (std::size_t i = 0; i < piece_rows.size(); ++i) {
      std::int64_t len = ends[i] - starts[i];
      if (len < kQuoteMinLen || len > kQuoteMaxLen) continue;
      candidates[ids[i]] = PieceRef{ids[i], piece_docs[i], starts[i], ends[i]};
      candidate_ids.push_back(ids[i]);
    }
    if (candidate_ids.empty()) return {};

    auto src_members = source_membership(handle, sorted_unique(std::move(candidate_ids)), ctx);
    if (src_members.empty()) return {};

    std::vector<std::int64_t> clusters;
    for (auto& [cluster, piece] : src_members) clusters.push_back(cluster);
    clusters = sorted_unique(std::move(clusters));

    auto dests = destinations_for_clusters(handle, clusters, ctx);
    std::vector<std::int64_t> dest_ids;
    for (auto& [cluster, piece] : dests) dest_ids.push_back(piece);
    auto dest_refs = lookup_pieces(handle, sorted_unique(std::move(dest_ids)), ctx);

    std::map<std::int64_t, std::vector<std::string>> dest_docs_by_cluster;
    for (auto& [cluster, piece] : dests)
      dest_docs_by_cluster[cluster].push_back(dest_refs.at(piece).doc_id);
    for (auto& [cluster, doc_list] : dest_docs_by_cluster) {
      std::sort(doc_list.begin(), doc_list.end());
      doc_list.erase(std::unique(doc_list.begin(), doc_list.end()), doc_list.end());
    }

    std::vector<std::string> involved_docs = docs_e;
    for (auto& [cluster, doc_list] : dest_docs_by_cluster)
      involved_docs.insert(involved_docs.end(), doc_list.begin(), doc_list.end());
    std::sort(involved_docs.begin(), involved_docs.end());
    involved_docs.erase(std::unique(involved_docs.begin(), involved_docs.end()),
                        involved_docs.end());
    auto authors = author_sets(handle, involved_docs, ctx);
    static const std::set<std::string> kNone;
    auto authors_of = [&](const std::string& d) -> const std::set<std::string>& {
      auto it = authors.find(d);
      return it == authors.end() ? kNone : it->second;
    };

    for (auto& [cluster, piece] : src_members) {
      ctx.tick();
      const PieceRef& src = candidates.at(piece);
      std::int64_t n = 0;
      auto dit = dest_docs_by_cluster.find(cluster);
      if (dit != dest_docs_by_cluster.end()) {
        for (const auto& dst_doc : dit->second)
          if (disjoint(authors_of(src.doc_id), authors_of(dst_doc))) ++n;
      }
      if (n < 1) continue;
      quotes.push_back({src.piece_id, src.doc_id, src.start, src.end, src.end - src.start, n});
    }
  }

  std::sort(quotes.begin(), quotes.end(), [](const QuoteRow& a, const QuoteRow& b) {
    return a.n_reuses != b.n_reuses ? a.n_reuses > b.n_reuses : a.piece_id < b.piece_id;
  });
  if (static_cast<std::int64_t>(quotes.size()) > limit)
    quotes.resize(static_cast<std::size_t>(limit));
  return quotes;
}

ReceptionResult reception(const DatasetHandle& handle, const std::string& doc) {
  QueryContext ctx;
  return reception(handle, doc, ctx);
}

std::vector<QuoteRow> top_quotes(const DatasetHandle& handle, const std::string& edition,
                                 std::int64_t limit) {
  QueryContext ctx;
  return top_quotes(handle, edition, ctx, limit);
}

}  // namespace reuse
