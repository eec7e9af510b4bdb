#include "reuse/schema.hpp"

#include <algorithm>
#include <stdexcept>

#include "reuse/date.hpp"

namespace reuse {

const std::set<std::string> StandardTables::kNoAuthors{};

const Piece& StandardTables::piece(std::int64_t piece_id) const {
  auto it = piece_by_id_.find(piece_id);
  if (it == piece_by_id_.end())
    throw std::runtime_error("unknown piece_id: " + std::to_string(piece_id));
  return defrag_pieces[it->second];
}

const std::set<std::string>& StandardTables::authors_of(const std::string& doc_id) const {
  auto it = authors_by_doc_.find(doc_id);
  return it == authors_by_doc_.end() ? kNoAuthors : it->second;
}

void StandardTables::reindex() {
  piece_by_id_.clear();
  piece_by_id_.reserve(defrag_pieces.size() * 2);
  for (std::size_t i = 0; i < defrag_pieces.size(); ++i)
    piece_by_id_[defrag_pieces[i].piece_id] = i;
  authors_by_doc_.clear();
  for (const auto& [doc, author] : doc_authors) authors_by_doc_[doc].insert(author);
}

StandardTables build_standard(const Corpus& corpus, const std::vector<Piece>& pieces,
                              const ClusterAssignment& assignment,
                              const SourceLabeling& sources) {
  StandardTables t;

  t.docs.reserve(corpus.size());
  for (const auto& d : corpus.docs()) {
    t.docs.push_back({d.doc_id, d.collection, d.title, d.pub_date, d.edition_id});
    for (const auto& a : d.authors) t.doc_authors.push_back({d.doc_id, a});
  }
  std::sort(t.docs.begin(), t.docs.end(),
            [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
  std::sort(t.doc_authors.begin(), t.doc_authors.end());

  t.defrag_pieces = pieces;
  std::sort(t.defrag_pieces.begin(), t.defrag_pieces.end(),
            [](const Piece& a, const Piece& b) { return a.piece_id < b.piece_id; });
  for (std::size_t i = 0; i + 1 < t.defrag_pieces.size(); ++i)
    if (t.defrag_pieces[i].piece_id == t.defrag_pieces[i + 1].piece_id)
      throw std::runtime_error("duplicate piece_id: " +
                               std::to_string(t.defrag_pieces[i].piece_id));
  for (const auto& p : t.defrag_pieces) {
    if (!corpus.contains(p.doc_id))
      throw std::runtime_error("piece " + std::to_string(p.piece_id) +
                               " references unknown doc " + p.doc_id);
    if (p.start >= p.end)
      throw std::runtime_error("piece " + std::to_string(p.piece_id) + " has empty span");
  }
  t.reindex();

  for (const auto& [piece_id, cluster_id] : assignment.cluster_of) {
    t.piece(piece_id);  // throws on unknown ids
    t.clustered_defrag_pieces.push_back({cluster_id, piece_id});
    auto it = sources.is_source.find(piece_id);
    if (it == sources.is_source.end())
      throw std::runtime_error("piece " + std::to_string(piece_id) + " has no source label");
    if (it->second) t.source_pieces.push_back({cluster_id, piece_id});
  }
  std::sort(t.clustered_defrag_pieces.begin(), t.clustered_defrag_pieces.end());
  std::sort(t.source_pieces.begin(), t.source_pieces.end());
  return t;
}

std::vector<StandardTables::MemberRow> materialize_destination_pieces(
    const StandardTables& std_tables) {
  // Exclusive right join: clustered members that are not source pieces.
  // Both inputs are sorted by (cluster_id, piece_id).
  std::vector<StandardTables::MemberRow> out;
  if (std_tables.clustered_defrag_pieces.size() >= std_tables.source_pieces.size())
    out.reserve(std_tables.clustered_defrag_pieces.size() - std_tables.source_pieces.size());
  std::set_difference(std_tables.clustered_defrag_pieces.begin(),
                      std_tables.clustered_defrag_pieces.end(), std_tables.source_pieces.begin(),
                      std_tables.source_pieces.end(), std::back_inserter(out));
  return out;
}

std::vector<ReceptionEdgeRow> materialize_reception_edges(const StandardTables& std_tables) {
  std::vector<ReceptionEdgeRow> out;
  const auto& members = std_tables.clustered_defrag_pieces;
  const auto& sources = std_tables.source_pieces;

  std::size_t si = 0;
  std::size_t mi = 0;
  while (mi < members.size()) {
    std::int64_t cluster = members[mi].cluster_id;
    std::size_t m_end = mi;
    while (m_end < members.size() && members[m_end].cluster_id == cluster) ++m_end;
    std::size_t s_begin = si;
    while (si < sources.size() && sources[si].cluster_id == cluster) ++si;

    auto is_source = [&](std::int64_t piece_id) {
      // source rows within a cluster are sorted by piece_id
      auto lo = sources.begin() + static_cast<std::ptrdiff_t>(s_begin);
      auto hi = sources.begin() + static_cast<std::ptrdiff_t>(si);
      return std::binary_search(lo, hi, StandardTables::MemberRow{cluster, piece_id});
    };
    for (std::size_t s = s_begin; s < si; ++s) {
      const Piece& src = std_tables.piece(sources[s].piece_id);
      for (std::size_t m = mi; m < m_end; ++m) {
        if (is_source(members[m].piece_id)) continue;
        const Piece& dst = std_tables.piece(members[m].piece_id);
        out.push_back({src.doc_id, src.start, src.end, dst.doc_id, dst.start, dst.end});
      }
    }
    mi = m_end;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SourcePieceStatsRow> materialize_source_piece_statistics(
    const StandardTables& std_tables) {
  // Destination documents per cluster, gathered once.
  std::unordered_map<std::int64_t, std::vector<std::string>> dst_docs_by_cluster;
  {
    auto dests = materialize_destination_pieces(std_tables);
    for (const auto& d : dests)
      dst_docs_by_cluster[d.cluster_id].push_back(std_tables.piece(d.piece_id).doc_id);
    for (auto& [cluster, docs] : dst_docs_by_cluster) {
      std::sort(docs.begin(), docs.end());
      docs.erase(std::unique(docs.begin(), docs.end()), docs.end());
    }
  }

  auto disjoint = [](const std::set<std::string>& a, const std::set<std::string>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
      if (*ia < *ib) ++ia;
      else if (*ib < *ia) ++ib;
      else return false;
    }
    return true;
  };

  std::vector<SourcePieceStatsRow> out;
  out.reserve(std_tables.source_pieces.size());
  for (const auto& s : std_tables.source_pieces) {
    const Piece& p = std_tables.piece(s.piece_id);
    const auto& src_authors = std_tables.authors_of(p.doc_id);
    std::int64_t n_reuses = 0;
    auto it = dst_docs_by_cluster.find(s.cluster_id);
    if (it != dst_docs_by_cluster.end()) {
      for (const auto& dst_doc : it->second)
        if (disjoint(src_authors, std_tables.authors_of(dst_doc))) ++n_reuses;
    }
    out.push_back({s.piece_id, s.cluster_id, p.doc_id, p.start, p.end, p.length(), n_reuses});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.piece_id < b.piece_id; });
  return out;
}

namespace {

Table docs_table(const StandardTables& t) {
  Table tbl{"docs",
            {Column::string("doc_id"), Column::string("collection"), Column::string("title"),
             Column::string("pub_date"), Column::string("edition_id")}};
  for (const auto& d : t.docs) {
    tbl.columns[0].strs.push_back(d.doc_id);
    tbl.columns[1].strs.push_back(d.collection);
    tbl.columns[2].strs.push_back(d.title);
    tbl.columns[3].strs.push_back(format_pub_date(d.pub_date));
    tbl.columns[4].strs.push_back(d.edition_id);
  }
  return tbl;
}

Table doc_authors_table(const StandardTables& t) {
  Table tbl{"doc_authors", {Column::string("doc_id"), Column::string("author_id")}};
  for (const auto& [doc, author] : t.doc_authors) {
    tbl.columns[0].strs.push_back(doc);
    tbl.columns[1].strs.push_back(author);
  }
  return tbl;
}

Table defrag_pieces_table(const StandardTables& t) {
  Table tbl{"defrag_pieces",
            {Column::int64("piece_id"), Column::string("doc_id"), Column::int64("start"),
             Column::int64("end")}};
  for (const auto& p : t.defrag_pieces) {
    tbl.columns[0].ints.push_back(p.piece_id);
    tbl.columns[1].strs.push_back(p.doc_id);
    tbl.columns[2].ints.push_back(p.start);
    tbl.columns[3].ints.push_back(p.end);
  }
  return tbl;
}

Table member_table(const std::vector<StandardTables::MemberRow>& rows, std::string name) {
  Table tbl{std::move(name), {Column::int64("cluster_id"), Column::int64("piece_id")}};
  for (const auto& r : rows) {
    tbl.columns[0].ints.push_back(r.cluster_id);
    tbl.columns[1].ints.push_back(r.piece_id);
  }
  return tbl;
}

Table reception_edges_table(const std::vector<ReceptionEdgeRow>& rows) {
  Table tbl{"reception_edges",
            {Column::string("src_doc_id"), Column::int64("src_start"), Column::int64("src_end"),
             Column::string("dst_doc_id"), Column::int64("dst_start"), Column::int64("dst_end")}};
  for (const auto& r : rows) {
    tbl.columns[0].strs.push_back(r.src_doc_id);
    tbl.columns[1].ints.push_back(r.src_start);
    tbl.columns[2].ints.push_back(r.src_end);
    tbl.columns[3].strs.push_back(r.dst_doc_id);
    tbl.columns[4].ints.push_back(r.dst_start);
    tbl.columns[5].ints.push_back(r.dst_end);
  }
  return tbl;
}

Table stats_table(const std::vector<SourcePieceStatsRow>& rows) {
  Table tbl{"source_piece_statistics",
            {Column::int64("piece_id"), Column::int64("cluster_id"), Column::string("doc_id"),
             Column::int64("start"), Column::int64("end"), Column::int64("piece_length"),
             Column::int64("n_reuses")}};
  for (const auto& r : rows) {
    tbl.columns[0].ints.push_back(r.piece_id);
    tbl.columns[1].ints.push_back(r.cluster_id);
    tbl.columns[2].strs.push_back(r.doc_id);
    tbl.columns[3].ints.push_back(r.start);
    tbl.columns[4].ints.push_back(r.end);
    tbl.columns[5].ints.push_back(r.piece_length);
    tbl.columns[6].ints.push_back(r.n_reuses);
  }
  return tbl;
}

}  // namespace

Dataset materialize_dataset(const StandardTables& std_tables, NormalizationLevel level) {
  Dataset ds;
  ds.level = level;
  ds.tables.push_back(docs_table(std_tables));
  ds.tables.push_back(doc_authors_table(std_tables));
  ds.tables.push_back(defrag_pieces_table(std_tables));
  ds.tables.push_back(member_table(std_tables.clustered_defrag_pieces, "clustered_defrag_pieces"));
  ds.tables.push_back(member_table(std_tables.source_pieces, "source_pieces"));
  if (level == NormalizationLevel::Intermediate || level == NormalizationLevel::Denorm)
    ds.tables.push_back(member_table(materialize_destination_pieces(std_tables),
                                     "destination_pieces"));
  if (level == NormalizationLevel::Denorm) {
    ds.tables.push_back(reception_edges_table(materialize_reception_edges(std_tables)));
    ds.tables.push_back(stats_table(materialize_source_piece_statistics(std_tables)));
  }
  return ds;
}

DatasetStats dataset_stats(const StandardTables& std_tables) {
  DatasetStats s;
  s.n_docs = static_cast<std::int64_t>(std_tables.docs.size());
  {
    std::vector<std::string> editions;
    for (const auto& d : std_tables.docs) editions.push_back(d.edition_id);
    std::sort(editions.begin(), editions.end());
    editions.erase(std::unique(editions.begin(), editions.end()), editions.end());
    s.n_editions = static_cast<std::int64_t>(editions.size());
  }
  s.n_pieces = static_cast<std::int64_t>(std_tables.defrag_pieces.size());
  {
    std::int64_t prev = -1;
    for (const auto& m : std_tables.clustered_defrag_pieces) {
      if (m.cluster_id != prev) {
        ++s.n_clusters;
        prev = m.cluster_id;
      }
    }
  }
  s.n_source_pieces = static_cast<std::int64_t>(std_tables.source_pieces.size());
  s.n_destination_pieces =
      static_cast<std::int64_t>(std_tables.clustered_defrag_pieces.size()) - s.n_source_pieces;

  auto stats = materialize_source_piece_statistics(std_tables);
  if (!stats.empty()) {
    double len_sum = 0, reuse_sum = 0;
    for (const auto& r : stats) {
      len_sum += static_cast<double>(r.piece_length);
      reuse_sum += static_cast<double>(r.n_reuses);
    }
    s.avg_source_piece_length = len_sum / static_cast<double>(stats.size());
    s.avg_n_reuses = reuse_sum / static_cast<double>(stats.size());
  }
  s.n_reception_edges = static_cast<std::int64_t>(materialize_reception_edges(std_tables).size());
  return s;
}

}  // namespace reuse
