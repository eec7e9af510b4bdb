#pragma once

#include <filesystem>

#include "reuse/document.hpp"
#include "reuse/generator.hpp"

namespace reuse {

// Corpus file: JSONL, one object per line with keys doc_id, collection,
// title, pub_date ("YYYY" | "YYYY-MM-DD" | null), authors, edition_id, text.
// Parse failures report the line number; duplicate doc_ids are rejected.
Corpus load_corpus(const std::filesystem::path& path);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

GroundTruth load_ground_truth(const std::filesystem::path& path);
void save_ground_truth(const GroundTruth& gt, const std::filesystem::path& path);

}  // namespace reuse
