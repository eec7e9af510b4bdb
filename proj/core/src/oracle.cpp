#include "reuse/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace reuse {

namespace {

constexpr std::size_t kMaxPieces = 1000000;

void check_size(const StandardTables& t) {
  if (t.defrag_pieces.size() > kMaxPieces)
    throw std::runtime_error("oracle size guard exceeded: " +
                             std::to_string(t.defrag_pieces.size()) + " pieces");
}

std::map<std::int64_t, std::vector<std::int64_t>> members_by_cluster(const StandardTables& t) {
  std::map<std::int64_t, std::vector<std::int64_t>> out;
  for (const auto& m : t.clustered_defrag_pieces) out[m.cluster_id].push_back(m.piece_id);
  return out;
}

bool sets_disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (const auto& x : a)
    if (b.count(x)) return false;
  return true;
}

}  // namespace

ReceptionResult brute_force_reception(const StandardTables& std_tables, const std::string& doc) {
  check_size(std_tables);
  auto members = members_by_cluster(std_tables);

  std::map<std::int64_t, std::set<std::int64_t>> sources_by_cluster;
  for (const auto& s : std_tables.source_pieces)
    sources_by_cluster[s.cluster_id].insert(s.piece_id);

  ReceptionResult result;
  for (const auto& [cluster, member_ids] : members) {
    const auto& source_set = sources_by_cluster[cluster];
    for (std::int64_t src_id : source_set) {
      const Piece& src = std_tables.piece(src_id);
      if (src.doc_id != doc) continue;
      for (std::int64_t member_id : member_ids) {
        if (source_set.count(member_id)) continue;
        const Piece& dst = std_tables.piece(member_id);
        result.rows.push_back({src.doc_id, src.start, src.end, dst.doc_id, dst.start, dst.end});
      }
    }
  }
  std::sort(result.rows.begin(), result.rows.end(),
            [](const ReceptionEdgeRow& a, const ReceptionEdgeRow& b) {
              if (a.dst_doc_id != b.dst_doc_id) return a.dst_doc_id < b.dst_doc_id;
              if (a.dst_start != b.dst_start) return a.dst_start < b.dst_start;
              if (a.src_start != b.src_start) return a.src_start < b.src_start;
              if (a.dst_end != b.dst_end) return a.dst_end < b.dst_end;
              if (a.src_end != b.src_end) return a.src_end < b.src_end;
              return a.src_doc_id < b.src_doc_id;
            });
  return result;
}

std::vector<QuoteRow> brute_force_quotes(const StandardTables& std_tables,
                                         const std::string& edition, std::int64_t limit) {
  check_size(std_tables);

  std::set<std::string> edition_docs;
  for (const auto& d : std_tables.docs)
    if (d.edition_id == edition) edition_docs.insert(d.doc_id);

  auto members = members_by_cluster(std_tables);
  std::map<std::int64_t, std::set<std::int64_t>> sources_by_cluster;
  for (const auto& s : std_tables.source_pieces)
    sources_by_cluster[s.cluster_id].insert(s.piece_id);

  std::vector<QuoteRow> quotes;
  for (const auto& s : std_tables.source_pieces) {
    const Piece& p = std_tables.piece(s.piece_id);
    if (!edition_docs.count(p.doc_id)) continue;
    std::int64_t len = p.end - p.start;
    if (len < kQuoteMinLen || len > kQuoteMaxLen) continue;

    const auto& source_set = sources_by_cluster[s.cluster_id];
    std::set<std::string> dst_docs;
    for (std::int64_t member_id : members[s.cluster_id]) {
      if (source_set.count(member_id)) continue;
      dst_docs.insert(std_tables.piece(member_id).doc_id);
    }
    std::int64_t n = 0;
    for (const auto& dst_doc : dst_docs)
      if (sets_disjoint(std_tables.authors_of(p.doc_id), std_tables.authors_of(dst_doc))) ++n;
    if (n < 1) continue;
    quotes.push_back({p.piece_id, p.doc_id, p.start, p.end, len, n});
  }

  std::sort(quotes.begin(), quotes.end(), [](const QuoteRow& a, const QuoteRow& b) {
    return a.n_reuses != b.n_reuses ? a.n_reuses > b.n_reuses : a.piece_id < b.piece_id;
  });
  if (static_cast<std::int64_t>(quotes.size()) > limit)
    quotes.resize(static_cast<std::size_t>(limit));
  return quotes;
}

}  // namespace reuse
