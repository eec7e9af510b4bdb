#include "reuse/detection_eval.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>

namespace reuse {

namespace {

using Intervals = std::vector<std::pair<std::int64_t, std::int64_t>>;

void normalize_intervals(Intervals& ivs) {
  std::sort(ivs.begin(), ivs.end());
  Intervals out;
  for (auto& iv : ivs) {
    if (!out.empty() && iv.first <= out.back().second)
      out.back().second = std::max(out.back().second, iv.second);
    else
      out.push_back(iv);
  }
  ivs = std::move(out);
}

std::int64_t total_len(const Intervals& ivs) {
  std::int64_t n = 0;
  for (auto& iv : ivs) n += iv.second - iv.first;
  return n;
}

std::int64_t overlap_len(const Intervals& sorted, std::int64_t lo, std::int64_t hi) {
  std::int64_t n = 0;
  auto it = std::lower_bound(sorted.begin(), sorted.end(),
                             std::pair<std::int64_t, std::int64_t>{lo, INT64_MIN});
  if (it != sorted.begin()) --it;
  for (; it != sorted.end() && it->first < hi; ++it)
    n += std::max<std::int64_t>(0, std::min(hi, it->second) - std::max(lo, it->first));
  return n;
}

}  // namespace

DetectionReport evaluate_detection(const std::vector<Hit>& hits, const GroundTruth& gt,
                                   const Corpus& corpus) {
  // Covered characters per document, from both hit sides.
  std::map<std::string, Intervals> covered;
  for (const auto& h : hits) {
    corpus.doc(h.doc_a);  // throws on unknown ids
    corpus.doc(h.doc_b);
    covered[h.doc_a].push_back({h.start_a, h.end_a});
    covered[h.doc_b].push_back({h.start_b, h.end_b});
  }
  for (auto& [doc, ivs] : covered) normalize_intervals(ivs);

  DetectionReport report;
  std::int64_t planted_total = 0, planted_covered = 0;

  for (const auto& p : gt.planted) {
    std::vector<Span> spans;
    spans.push_back(p.origin);
    for (const auto& c : p.copies) spans.push_back(c.span);

    std::int64_t p_total = 0, p_covered = 0;
    for (const auto& s : spans) {
      p_total += s.end - s.start;
      auto it = covered.find(s.doc_id);
      if (it != covered.end()) p_covered += overlap_len(it->second, s.start, s.end);
    }
    planted_total += p_total;
    planted_covered += p_covered;
    report.per_passage.push_back(
        {p.passage_id, p_total > 0 ? static_cast<double>(p_covered) / p_total : 0.0});
  }

  // Precision over the union of covered characters, against the union of
  // planted spans per document.
  std::map<std::string, Intervals> planted_by_doc;
  for (const auto& p : gt.planted) {
    planted_by_doc[p.origin.doc_id].push_back({p.origin.start, p.origin.end});
    for (const auto& c : p.copies)
      planted_by_doc[c.span.doc_id].push_back({c.span.start, c.span.end});
  }
  for (auto& [doc, ivs] : planted_by_doc) normalize_intervals(ivs);

  std::int64_t hit_total = 0, hit_on_planted = 0;
  for (const auto& [doc, ivs] : covered) {
    hit_total += total_len(ivs);
    auto it = planted_by_doc.find(doc);
    if (it == planted_by_doc.end()) continue;
    for (const auto& iv : ivs) hit_on_planted += overlap_len(it->second, iv.first, iv.second);
  }

  report.recall = planted_total > 0 ? static_cast<double>(planted_covered) / planted_total : 0.0;
  report.precision = hit_total > 0 ? static_cast<double>(hit_on_planted) / hit_total : 0.0;
  return report;
}

}  // namespace reuse
