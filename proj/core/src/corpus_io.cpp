#include "reuse/corpus_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace reuse {

using nlohmann::json;

Corpus::Corpus(std::vector<Document> docs) {
  for (auto& d : docs) add(std::move(d));
}

const Document& Corpus::doc(const std::string& doc_id) const {
  auto it = by_id_.find(doc_id);
  if (it == by_id_.end()) throw std::runtime_error("unknown doc_id: " + doc_id);
  return docs_[it->second];
}

void Corpus::add(Document doc) {
  if (doc.edition_id.empty())
    throw std::runtime_error("document " + doc.doc_id + " has empty edition_id");
  auto [it, inserted] = by_id_.emplace(doc.doc_id, docs_.size());
  if (!inserted) throw std::runtime_error("duplicate doc_id: " + doc.doc_id);
  docs_.push_back(std::move(doc));
}

static Document doc_from_json(const json& j) {
  Document d;
  d.doc_id = j.at("doc_id").get<std::string>();
  d.collection = j.at("collection").get<std::string>();
  d.title = j.at("title").get<std::string>();
  const auto& pd = j.at("pub_date");
  if (!pd.is_null()) d.pub_date = parse_pub_date(pd.get<std::string>());
  for (const auto& a : j.at("authors")) d.authors.insert(a.get<std::string>());
  d.edition_id = j.at("edition_id").get<std::string>();
  d.text = j.at("text").get<std::string>();
  return d;
}

static json doc_to_json(const Document& d) {
  json j;
  j["doc_id"] = d.doc_id;
  j["collection"] = d.collection;
  j["title"] = d.title;
  if (d.pub_date) j["pub_date"] = format_pub_date(d.pub_date);
  else j["pub_date"] = nullptr;
  j["authors"] = d.authors;
  j["edition_id"] = d.edition_id;
  j["text"] = d.text;
  return j;
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path.string());
  Corpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      corpus.add(doc_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": parse error: " + e.what());
    } catch (const std::runtime_error& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path.string());
  for (const auto& d : corpus.docs()) out << doc_to_json(d).dump() << '\n';
}

static json span_to_json(const Span& s) {
  return json{{"doc_id", s.doc_id}, {"start", s.start}, {"end", s.end}};
}

static Span span_from_json(const json& j) {
  return Span{j.at("doc_id").get<std::string>(), j.at("start").get<std::int64_t>(),
              j.at("end").get<std::int64_t>()};
}

void save_ground_truth(const GroundTruth& gt, const std::filesystem::path& path) {
  json planted = json::array();
  for (const auto& p : gt.planted) {
    json copies = json::array();
    for (const auto& c : p.copies) {
      json cj = span_to_json(c.span);
      cj["corrupted_chars"] = c.corrupted_chars;
      copies.push_back(std::move(cj));
    }
    planted.push_back(json{{"passage_id", p.passage_id},
                           {"origin", span_to_json(p.origin)},
                           {"copies", std::move(copies)}});
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write ground truth file: " + path.string());
  out << json{{"planted", std::move(planted)}}.dump(2) << '\n';
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ground truth file: " + path.string());
  json j;
  in >> j;
  GroundTruth gt;
  for (const auto& pj : j.at("planted")) {
    PlantedPassage p;
    p.passage_id = pj.at("passage_id").get<std::int64_t>();
    p.origin = span_from_json(pj.at("origin"));
    for (const auto& cj : pj.at("copies")) {
      PlantedCopy c;
      c.span = span_from_json(cj);
      c.corrupted_chars = cj.at("corrupted_chars").get<std::int64_t>();
      p.copies.push_back(std::move(c));
    }
    gt.planted.push_back(std::move(p));
  }
  return gt;
}

}  // namespace reuse
