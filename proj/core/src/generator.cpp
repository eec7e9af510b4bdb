#include "reuse/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "reuse/rng.hpp"

namespace reuse {

void GeneratorConfig::validate() const {
  if (n_docs <= 0) throw std::invalid_argument("n_docs must be > 0");
  if (avg_doc_len <= 0) throw std::invalid_argument("avg_doc_len must be > 0");
  if (zipf_exponent <= 0) throw std::invalid_argument("zipf_exponent must be > 0");
  if (noise_rate < 0 || noise_rate > 1) throw std::invalid_argument("noise_rate must be in [0,1]");
  if (n_planted_passages < 0) throw std::invalid_argument("n_planted_passages must be >= 0");
  if (passage_len_range.first <= 0 || passage_len_range.first > passage_len_range.second)
    throw std::invalid_argument("passage_len_range must satisfy 0 < min <= max");
  if (date_range.first > date_range.second)
    throw std::invalid_argument("date_range must satisfy min <= max");
  if (total_copies < 0) throw std::invalid_argument("total_copies must be >= 0");
}

namespace {

std::vector<std::string> make_vocab(Rng& rng, std::size_t n_words) {
  std::vector<std::string> vocab;
  vocab.reserve(n_words);
  for (std::size_t i = 0; i < n_words; ++i) {
    std::size_t len = 3 + static_cast<std::size_t>(rng.below(7));
    std::string w;
    for (std::size_t j = 0; j < len; ++j) w += static_cast<char>('a' + rng.below(26));
    vocab.push_back(std::move(w));
  }
  return vocab;
}

// Word soup of exactly `len` characters (last word clipped).
std::string make_text(Rng& rng, const std::vector<std::string>& vocab, std::int64_t len) {
  std::string out;
  out.reserve(static_cast<std::size_t>(len) + 12);
  while (static_cast<std::int64_t>(out.size()) < len) {
    if (!out.empty()) out += ' ';
    const std::string& w = vocab[rng.below(vocab.size())];
    if (rng.chance(0.08)) {
      out += static_cast<char>(w[0] - 'a' + 'A');
      out += w.substr(1);
    } else {
      out += w;
    }
  }
  out.resize(static_cast<std::size_t>(len));
  return out;
}

// Applies per-character corruptions. Substitution-heavy mix: OCR noise is
// mostly misread glyphs, with occasional dropped or spurious characters.
std::string corrupt(Rng& rng, const std::string& text, double rate, std::int64_t& n_corrupted) {
  std::string out;
  out.reserve(text.size() + 8);
  n_corrupted = 0;
  for (char c : text) {
    if (!rng.chance(rate)) {
      out += c;
      continue;
    }
    ++n_corrupted;
    double kind = rng.unit();
    if (kind < 0.90) {  // substitute with a different letter
      char repl;
      do {
        repl = static_cast<char>('a' + rng.below(26));
      } while (repl == c);
      out += repl;
    } else if (kind < 0.95) {  // delete
    } else {  // insert before
      out += static_cast<char>('a' + rng.below(26));
      out += c;
    }
  }
  return out;
}

struct Placement {
  std::size_t passage = 0;  // index into passages
  bool is_origin = false;
};

}  // namespace

std::pair<Corpus, GroundTruth> generate_synthetic(const GeneratorConfig& config) {
  config.validate();
  Rng rng(config.seed);

  const auto n_docs = static_cast<std::size_t>(config.n_docs);
  const auto vocab = make_vocab(rng, 1200);

  // Editions first: member docs of an edition share one author set, and about
  // 10% of editions carry no authorship metadata at all.
  std::vector<std::string> edition_of(n_docs);
  std::vector<std::set<std::string>> authors_of(n_docs);
  const std::size_t n_authors = std::max<std::size_t>(8, n_docs / 2);
  {
    std::size_t doc = 0, edition = 0;
    while (doc < n_docs) {
      std::size_t members = 1;
      double r = rng.unit();
      if (r < 0.15) members = 2;
      else if (r < 0.20) members = 3;
      members = std::min(members, n_docs - doc);

      char ed[24];
      std::snprintf(ed, sizeof(ed), "e%05zu", edition++);
      std::set<std::string> authors;
      if (!rng.chance(0.10)) {
        std::size_t k = rng.chance(0.2) ? 2 : 1;
        for (std::size_t i = 0; i < k; ++i) {
          char a[24];
          std::snprintf(a, sizeof(a), "a%05llu",
                        static_cast<unsigned long long>(rng.below(n_authors)));
          authors.insert(a);
        }
      }
      for (std::size_t m = 0; m < members; ++m, ++doc) {
        edition_of[doc] = ed;
        authors_of[doc] = authors;
      }
    }
  }

  // Passage texts and their copy counts (Zipf over passage rank).
  const auto n_passages = static_cast<std::size_t>(config.n_planted_passages);
  std::vector<std::string> passages(n_passages);
  for (auto& p : passages)
    p = make_text(rng, vocab,
                  rng.range(config.passage_len_range.first, config.passage_len_range.second));

  std::int64_t budget = config.total_copies > 0 ? config.total_copies
                                                : 4 * config.n_planted_passages;
  std::vector<std::size_t> copies_of(n_passages, 0);
  if (n_passages > 0) {
    double sum_w = 0.0;
    for (std::size_t i = 1; i <= n_passages; ++i)
      sum_w += std::pow(static_cast<double>(i), -config.zipf_exponent);
    for (std::size_t i = 0; i < n_passages; ++i) {
      double w = std::pow(static_cast<double>(i + 1), -config.zipf_exponent) / sum_w;
      auto c = static_cast<std::size_t>(std::llround(w * static_cast<double>(budget)));
      copies_of[i] = std::clamp<std::size_t>(c, 1, n_docs > 1 ? n_docs - 1 : 1);
    }
  }

  // Assign origin + copies to distinct docs per passage.
  std::vector<std::vector<Placement>> doc_placements(n_docs);
  std::vector<std::size_t> origin_doc(n_passages);
  std::vector<std::vector<std::size_t>> copy_docs(n_passages);
  for (std::size_t p = 0; p < n_passages; ++p) {
    std::vector<std::size_t> picks(n_docs);
    for (std::size_t i = 0; i < n_docs; ++i) picks[i] = i;
    rng.shuffle(picks);
    std::size_t need = std::min(copies_of[p] + 1, n_docs);
    origin_doc[p] = picks[0];
    doc_placements[picks[0]].push_back({p, true});
    for (std::size_t i = 1; i < need; ++i) {
      copy_docs[p].push_back(picks[i]);
      doc_placements[picks[i]].push_back({p, false});
    }
  }

  // Assemble documents: filler / segment / filler / ... with a filler budget
  // aimed at avg_doc_len.
  Corpus corpus;
  GroundTruth gt;
  gt.planted.resize(n_passages);
  for (std::size_t p = 0; p < n_passages; ++p)
    gt.planted[p].passage_id = static_cast<std::int64_t>(p);

  for (std::size_t d = 0; d < n_docs; ++d) {
    Document doc;
    char id[24];
    std::snprintf(id, sizeof(id), "d%05zu", d);
    doc.doc_id = id;
    doc.collection = rng.chance(0.5) ? "books" : "papers";
    doc.title = make_text(rng, vocab, 24);
    doc.edition_id = edition_of[d];
    doc.authors = authors_of[d];
    PubDate date;
    date.year = static_cast<int>(rng.range(config.date_range.first, config.date_range.second));
    if (rng.chance(0.5)) {
      date.month = static_cast<int>(rng.range(1, 12));
      date.day = static_cast<int>(rng.range(1, 28));
    }
    doc.pub_date = date;

    auto& placements = doc_placements[d];
    rng.shuffle(placements);

    std::int64_t planted_chars = 0;
    for (const auto& pl : placements)
      planted_chars += static_cast<std::int64_t>(passages[pl.passage].size());
    std::int64_t filler_total = std::max<std::int64_t>(
        static_cast<std::int64_t>(40 * (placements.size() + 1)),
        config.avg_doc_len - planted_chars);
    std::int64_t filler_base = filler_total / static_cast<std::int64_t>(placements.size() + 1);

    std::string text;
    auto add_filler = [&] {
      std::int64_t len = filler_base / 2 + rng.range(0, std::max<std::int64_t>(1, filler_base));
      if (!text.empty()) text += ' ';
      text += make_text(rng, vocab, len);
    };

    add_filler();
    for (const auto& pl : placements) {
      std::string segment;
      std::int64_t corrupted = 0;
      if (pl.is_origin) segment = passages[pl.passage];
      else segment = corrupt(rng, passages[pl.passage], config.noise_rate, corrupted);

      text += ' ';
      auto start = static_cast<std::int64_t>(text.size());
      text += segment;
      auto end = static_cast<std::int64_t>(text.size());
      if (pl.is_origin) {
        gt.planted[pl.passage].origin = Span{doc.doc_id, start, end};
      } else {
        gt.planted[pl.passage].copies.push_back(
            PlantedCopy{Span{doc.doc_id, start, end}, corrupted});
      }
      add_filler();
    }
    doc.text = std::move(text);
    corpus.add(std::move(doc));
  }

  return {std::move(corpus), std::move(gt)};
}

}  // namespace reuse
