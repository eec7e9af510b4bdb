#include "reuse/matcher.hpp"

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reuse/normalize.hpp"

namespace reuse {

namespace {

struct Posting {
  std::uint32_t doc = 0;
  std::uint32_t pos = 0;
};

struct PairDiagKey {
  std::uint32_t doc_a, doc_b;
  std::int64_t diag;
  bool operator==(const PairDiagKey&) const = default;
};

struct PairDiagHash {
  std::size_t operator()(const PairDiagKey& k) const {
    std::uint64_t h = k.doc_a;
    h = h * 0x9E3779B97F4A7C15ull + k.doc_b;
    h = h * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(k.diag);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

using Interval = std::pair<std::int64_t, std::int64_t>;

// Sorted, disjoint intervals on the first document's normalized text.
bool contains(const std::vector<Interval>& ivs, std::int64_t lo, std::int64_t hi) {
  auto it = std::upper_bound(ivs.begin(), ivs.end(), Interval{lo, INT64_MAX});
  if (it == ivs.begin()) return false;
  --it;
  return it->first <= lo && hi <= it->second;
}

void insert_interval(std::vector<Interval>& ivs, Interval iv) {
  auto it = std::lower_bound(ivs.begin(), ivs.end(), iv);
  it = ivs.insert(it, iv);
  // merge with neighbours
  std::size_t i = static_cast<std::size_t>(it - ivs.begin());
  if (i > 0 && ivs[i - 1].second >= ivs[i].first) {
    ivs[i - 1].second = std::max(ivs[i - 1].second, ivs[i].second);
    ivs.erase(ivs.begin() + static_cast<std::ptrdiff_t>(i));
    --i;
  }
  while (i + 1 < ivs.size() && ivs[i].second >= ivs[i + 1].first) {
    ivs[i].second = std::max(ivs[i].second, ivs[i + 1].second);
    ivs.erase(ivs.begin() + static_cast<std::ptrdiff_t>(i + 1));
  }
}

struct Extension {
  std::int64_t start_a = 0, end_a = 0;  // normalized span on side a
  std::int64_t start_b = 0, end_b = 0;
};

Extension extend_seed(std::string_view a, std::string_view b, std::int64_t pa, std::int64_t pb,
                      const MatcherConfig& cfg) {
  const std::int64_t match = cfg.match_score, mismatch = cfg.mismatch_score;

  // Right of the seed.
  std::int64_t score = cfg.k * match, best = score;
  std::int64_t ra = pa + cfg.k, rb = pb + cfg.k;
  std::int64_t best_ra = ra;
  while (ra < static_cast<std::int64_t>(a.size()) && rb < static_cast<std::int64_t>(b.size())) {
    score += a[static_cast<std::size_t>(ra)] == b[static_cast<std::size_t>(rb)] ? match : mismatch;
    ++ra;
    ++rb;
    if (score > best) {
      best = score;
      best_ra = ra;
    } else if (score <= best - cfg.xdrop) {
      break;
    }
  }

  // Left of the seed.
  score = best;
  std::int64_t la = pa, lb = pb, best_la = la;
  while (la > 0 && lb > 0) {
    score += a[static_cast<std::size_t>(la - 1)] == b[static_cast<std::size_t>(lb - 1)] ? match
                                                                                        : mismatch;
    --la;
    --lb;
    if (score > best) {
      best = score;
      best_la = la;
    } else if (score <= best - cfg.xdrop) {
      break;
    }
  }

  Extension e;
  e.start_a = best_la;
  e.end_a = best_ra;
  e.start_b = pb - (pa - best_la);
  e.end_b = pb + (best_ra - pa);
  return e;
}

}  // namespace

std::vector<Hit> find_hits(const Corpus& corpus, const MatcherConfig& config) {
  config.validate();
  const auto& docs = corpus.docs();
  const auto k = static_cast<std::size_t>(config.k);

  std::vector<NormalizedText> norm(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) norm[i] = normalize_text(docs[i].text);

  // Postings per k-mer, collected in (doc, pos) order.
  std::unordered_map<std::string_view, std::vector<Posting>> index;
  index.reserve(1 << 16);
  for (std::size_t d = 0; d < norm.size(); ++d) {
    const std::string& t = norm[d].text;
    if (t.size() < k) continue;
    for (std::size_t p = 0; p + k <= t.size(); ++p) {
      index[std::string_view(t).substr(p, k)].push_back(
          {static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(p)});
    }
  }

  std::vector<std::string_view> kmers;
  kmers.reserve(index.size());
  for (const auto& [key, postings] : index) {
    // doc-frequency cap: common phrases seed quadratic work and carry little signal
    std::size_t docfreq = 0;
    std::uint32_t prev = UINT32_MAX;
    for (const auto& post : postings) {
      if (post.doc != prev) {
        ++docfreq;
        prev = post.doc;
      }
    }
    if (docfreq >= 2 && docfreq <= static_cast<std::size_t>(config.max_kmer_docfreq))
      kmers.push_back(key);
  }
  std::sort(kmers.begin(), kmers.end());

  std::unordered_map<PairDiagKey, std::vector<Interval>, PairDiagHash> covered;
  std::vector<Hit> hits;

  for (const auto& kmer : kmers) {
    const auto& postings = index[kmer];
    for (std::size_t ia = 0; ia < postings.size(); ++ia) {
      for (std::size_t ib = ia + 1; ib < postings.size(); ++ib) {
        const Posting& u = postings[ia];
        const Posting& v = postings[ib];
        if (u.doc == v.doc) continue;

        const std::int64_t pa = u.pos, pb = v.pos;
        PairDiagKey key{u.doc, v.doc, pa - pb};
        auto& ivs = covered[key];
        if (contains(ivs, pa, pa + static_cast<std::int64_t>(k))) continue;

        Extension e =
            extend_seed(norm[u.doc].text, norm[v.doc].text, pa, pb, config);
        insert_interval(ivs, {e.start_a, e.end_a});

        if (e.end_a - e.start_a < config.min_hit_len) continue;
        auto [oa_start, oa_end] = decode_span(norm[u.doc].map, e.start_a, e.end_a);
        auto [ob_start, ob_end] = decode_span(norm[v.doc].map, e.start_b, e.end_b);
        hits.push_back(canonical_hit(Hit{docs[u.doc].doc_id, oa_start, oa_end,
                                         docs[v.doc].doc_id, ob_start, ob_end}));
      }
    }
  }

  canonicalize_hits(hits);
  return hits;
}

}  // namespace reuse
