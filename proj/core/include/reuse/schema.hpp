#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "reuse/cluster.hpp"
#include "reuse/document.hpp"
#include "reuse/pieces.hpp"
#include "reuse/sources.hpp"
#include "reuse/tables.hpp"

namespace reuse {

// Fully normalized tables, held as typed rows. The generic Dataset/Table view
// used by the engines is produced by materialize_dataset.
struct StandardTables {
  struct DocRow {
    std::string doc_id;
    std::string collection;
    std::string title;
    std::optional<PubDate> pub_date;
    std::string edition_id;
  };
  struct MemberRow {  // (cluster_id, piece_id)
    std::int64_t cluster_id = 0;
    std::int64_t piece_id = 0;
    friend bool operator==(const MemberRow&, const MemberRow&) = default;
    friend auto operator<=>(const MemberRow&, const MemberRow&) = default;
  };

  std::vector<DocRow> docs;                                        // ordered by doc_id
  std::vector<std::pair<std::string, std::string>> doc_authors;    // (doc_id, author_id), ordered
  std::vector<Piece> defrag_pieces;                                // ordered by piece_id
  std::vector<MemberRow> clustered_defrag_pieces;                  // ordered by (cluster, piece)
  std::vector<MemberRow> source_pieces;                            // subset of clustered, ordered

  const Piece& piece(std::int64_t piece_id) const;  // throws on unknown id
  const std::set<std::string>& authors_of(const std::string& doc_id) const;

  // Rebuilds the lookup structures; called by build_standard and the readers.
  void reindex();

 private:
  std::unordered_map<std::int64_t, std::size_t> piece_by_id_;
  std::unordered_map<std::string, std::set<std::string>> authors_by_doc_;
  static const std::set<std::string> kNoAuthors;
};

struct ReceptionEdgeRow {
  std::string src_doc_id;
  std::int64_t src_start = 0;
  std::int64_t src_end = 0;
  std::string dst_doc_id;
  std::int64_t dst_start = 0;
  std::int64_t dst_end = 0;

  friend bool operator==(const ReceptionEdgeRow&, const ReceptionEdgeRow&) = default;
  friend auto operator<=>(const ReceptionEdgeRow&, const ReceptionEdgeRow&) = default;
};

struct SourcePieceStatsRow {
  std::int64_t piece_id = 0;
  std::int64_t cluster_id = 0;
  std::string doc_id;
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::int64_t piece_length = 0;  // end - start
  std::int64_t n_reuses = 0;      // distinct destination docs with author sets
                                  // disjoint from this piece's document's

  friend bool operator==(const SourcePieceStatsRow&, const SourcePieceStatsRow&) = default;
};

// Populates StandardTables from pipeline outputs, validating referential
// integrity (every piece doc exists, every clustered/source piece exists,
// source_pieces is a subset of clustered_defrag_pieces).
StandardTables build_standard(const Corpus& corpus, const std::vector<Piece>& pieces,
                              const ClusterAssignment& assignment, const SourceLabeling& sources);

// clustered_defrag_pieces minus source_pieces, ordered by (cluster_id, piece_id).
std::vector<StandardTables::MemberRow> materialize_destination_pieces(const StandardTables& std_tables);

// Per cluster, sources x destinations denormalized to 6-tuples, ordered by
// (src_doc_id, src_start, src_end, dst_doc_id, dst_start, dst_end).
std::vector<ReceptionEdgeRow> materialize_reception_edges(const StandardTables& std_tables);

// One row per source piece regardless of length, ordered by piece_id.
std::vector<SourcePieceStatsRow> materialize_source_piece_statistics(const StandardTables& std_tables);

// Generic-table view of a level: Standard tables plus whatever the level
// materializes. Table column names and order follow the CSV interfaces.
Dataset materialize_dataset(const StandardTables& std_tables, NormalizationLevel level);

struct DatasetStats {
  std::int64_t n_docs = 0;
  std::int64_t n_editions = 0;
  std::int64_t n_pieces = 0;
  std::int64_t n_clusters = 0;
  std::int64_t n_source_pieces = 0;
  std::int64_t n_destination_pieces = 0;
  std::int64_t n_reception_edges = 0;
  std::optional<double> avg_source_piece_length;  // over source pieces; null when empty
  std::optional<double> avg_n_reuses;             // over source pieces; null when empty
};

DatasetStats dataset_stats(const StandardTables& std_tables);

}  // namespace reuse
