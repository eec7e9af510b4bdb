#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "reuse/document.hpp"

namespace reuse {

struct GeneratorConfig {
  std::int64_t n_docs = 100;
  std::int64_t avg_doc_len = 4000;          // characters
  double zipf_exponent = 1.1;               // reuse-popularity skew, > 0
  double noise_rate = 0.0;                  // per-character corruption probability, [0,1]
  std::int64_t n_planted_passages = 50;
  std::pair<std::int64_t, std::int64_t> passage_len_range = {150, 300};
  std::pair<int, int> date_range = {1700, 1799};
  std::uint64_t seed = 0;

  // Total planted copies (excluding origins), split across passages by the
  // Zipf law. 0 picks a default of 4x n_planted_passages.
  std::int64_t total_copies = 0;

  void validate() const;  // throws std::invalid_argument on violations
};

struct Span {
  std::string doc_id;
  std::int64_t start = 0;
  std::int64_t end = 0;

  friend bool operator==(const Span& a, const Span& b) {
    return a.doc_id == b.doc_id && a.start == b.start && a.end == b.end;
  }
  friend auto operator<=>(const Span& a, const Span& b) = default;
};

struct PlantedCopy {
  Span span;
  std::int64_t corrupted_chars = 0;
};

struct PlantedPassage {
  std::int64_t passage_id = 0;
  Span origin;
  std::vector<PlantedCopy> copies;
};

struct GroundTruth {
  std::vector<PlantedPassage> planted;
};

// Deterministic for a fixed config: identical (config, seed) produces a
// byte-identical corpus and ground truth. Passage popularity follows a Zipf
// law over passage rank; copies are corrupted with noise_rate per-character
// substitutions/deletions/insertions (substitution-heavy, as OCR noise is);
// roughly 10% of docs carry empty author sets.
std::pair<Corpus, GroundTruth> generate_synthetic(const GeneratorConfig& config);

}  // namespace reuse
