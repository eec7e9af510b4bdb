#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "reuse/date.hpp"

namespace reuse {

struct Document {
  std::string doc_id;
  std::string collection;
  std::string title;
  std::optional<PubDate> pub_date;  // year always present when set
  std::set<std::string> authors;    // may be empty
  std::string edition_id;           // non-empty
  std::string text;                 // UTF-8; offsets are byte offsets
};

// Immutable after construction; safe for concurrent reads.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Document> docs);

  const std::vector<Document>& docs() const { return docs_; }
  std::size_t size() const { return docs_.size(); }
  bool contains(const std::string& doc_id) const { return by_id_.count(doc_id) != 0; }

  // Throws std::runtime_error for unknown ids.
  const Document& doc(const std::string& doc_id) const;

  void add(Document doc);  // throws on duplicate doc_id or empty edition_id

 private:
  std::vector<Document> docs_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

}  // namespace reuse
