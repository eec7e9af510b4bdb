#include "reuse/synth_tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "reuse/rng.hpp"

namespace reuse {

void SynthTablesConfig::validate() const {
  if (n_docs <= 1) throw std::invalid_argument("n_docs must be > 1");
  if (n_clusters <= 0) throw std::invalid_argument("n_clusters must be > 0");
  if (size_zipf <= 0) throw std::invalid_argument("size_zipf must be > 0");
  if (min_cluster_size < 2) throw std::invalid_argument("min_cluster_size must be >= 2");
  if (max_cluster_size < min_cluster_size)
    throw std::invalid_argument("max_cluster_size must be >= min_cluster_size");
  if (date_range.first > date_range.second)
    throw std::invalid_argument("date_range must satisfy min <= max");
}

StandardTables generate_synthetic_tables(const SynthTablesConfig& config) {
  config.validate();
  Rng rng(config.seed);

  const auto n_docs = static_cast<std::size_t>(config.n_docs);
  const std::size_t n_authors = std::max<std::size_t>(8, n_docs / 2);

  // Documents grouped into editions that share an author set.
  Corpus corpus;
  {
    std::size_t doc = 0, edition = 0;
    while (doc < n_docs) {
      std::size_t members = 1;
      double r = rng.unit();
      if (r < 0.15) members = 2;
      else if (r < 0.20) members = 3;
      members = std::min(members, n_docs - doc);

      char ed[24];
      std::snprintf(ed, sizeof(ed), "e%06zu", edition++);
      std::set<std::string> authors;
      if (!rng.chance(0.10)) {
        std::size_t k = rng.chance(0.2) ? 2 : 1;
        for (std::size_t i = 0; i < k; ++i) {
          char a[24];
          std::snprintf(a, sizeof(a), "a%06llu",
                        static_cast<unsigned long long>(rng.below(n_authors)));
          authors.insert(a);
        }
      }
      for (std::size_t m = 0; m < members; ++m, ++doc) {
        Document d;
        char id[24];
        std::snprintf(id, sizeof(id), "d%06zu", doc);
        d.doc_id = id;
        d.collection = rng.chance(0.5) ? "books" : "papers";
        d.title = d.doc_id;
        d.edition_id = ed;
        d.authors = authors;
        PubDate date;  // year granularity only, so equal dates are common
        date.year = static_cast<int>(rng.range(config.date_range.first, config.date_range.second));
        d.pub_date = date;
        corpus.add(std::move(d));
      }
    }
  }

  // Cluster membership: rank-decayed sizes, distinct docs per cluster drawn
  // from a rotating shuffled deck.
  std::vector<std::size_t> deck(n_docs);
  for (std::size_t i = 0; i < n_docs; ++i) deck[i] = i;
  rng.shuffle(deck);
  std::size_t cursor = 0;
  auto next_docs = [&](std::size_t m) {
    std::vector<std::size_t> docs;
    docs.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (cursor == n_docs) {
        rng.shuffle(deck);
        cursor = 0;
      }
      docs.push_back(deck[cursor++]);
    }
    return docs;
  };

  struct ProtoPiece {
    std::string doc_id;
    std::int64_t start, end;
    std::int64_t cluster;
  };
  std::vector<ProtoPiece> proto;
  std::vector<std::int64_t> next_offset(n_docs, 0);

  for (std::int64_t c = 0; c < config.n_clusters; ++c) {
    double decay = std::pow(static_cast<double>(c + 1), -config.size_zipf);
    auto size = static_cast<std::int64_t>(
        std::llround(static_cast<double>(config.max_cluster_size) * decay));
    size = std::clamp(size, config.min_cluster_size,
                      std::min<std::int64_t>(config.max_cluster_size,
                                             static_cast<std::int64_t>(n_docs)));

    auto docs = next_docs(static_cast<std::size_t>(size));
    std::sort(docs.begin(), docs.end());
    docs.erase(std::unique(docs.begin(), docs.end()), docs.end());
    for (std::size_t d : docs) {
      std::int64_t len = rng.chance(0.35) ? 150 + rng.range(0, 150) : 301 + rng.range(0, 899);
      std::int64_t start = next_offset[d];
      next_offset[d] = start + len + 50;
      char id[24];
      std::snprintf(id, sizeof(id), "d%06zu", d);
      proto.push_back({id, start, start + len, c});
    }
  }

  // Dense piece ids in (doc_id, start, end) order, matching the pipeline's
  // convention.
  std::sort(proto.begin(), proto.end(), [](const ProtoPiece& a, const ProtoPiece& b) {
    if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
    if (a.start != b.start) return a.start < b.start;
    return a.end < b.end;
  });

  std::vector<Piece> pieces;
  pieces.reserve(proto.size());
  ClusterAssignment assignment;
  for (std::size_t i = 0; i < proto.size(); ++i) {
    auto id = static_cast<std::int64_t>(i);
    pieces.push_back(Piece{id, proto[i].doc_id, proto[i].start, proto[i].end});
    assignment.cluster_of[id] = proto[i].cluster;
    assignment.n_clusters = std::max(assignment.n_clusters, proto[i].cluster + 1);
  }

  SourceLabeling labeling = identify_sources(assignment, pieces, corpus);
  return build_standard(corpus, pieces, assignment, labeling);
}

}  // namespace reuse
