#pragma once

#include <vector>

#include "reuse/document.hpp"
#include "reuse/generator.hpp"
#include "reuse/hits.hpp"

namespace reuse {

struct PassageRecall {
  std::int64_t passage_id = 0;
  double recall = 0.0;  // covered planted chars / planted chars, for this passage
};

struct DetectionReport {
  double recall = 0.0;     // covered planted chars / planted chars
  double precision = 0.0;  // hit chars overlapping planted spans / total hit chars
  std::vector<PassageRecall> per_passage;
};

// Character-overlap scoring of hits against the planted ground truth (origin
// and copy spans both count as planted). Throws on hits referencing unknown
// documents.
DetectionReport evaluate_detection(const std::vector<Hit>& hits, const GroundTruth& gt,
                                   const Corpus& corpus);

}  // namespace reuse
