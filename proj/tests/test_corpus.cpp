#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "reuse/corpus_io.hpp"
#include "reuse/date.hpp"

using namespace reuse;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  auto dir = fs::temp_directory_path() / "reuse_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("empty corpus file loads as zero documents") {
  auto path = temp_file("empty.jsonl");
  std::ofstream(path, std::ios::trunc);
  CHECK(load_corpus(path).size() == 0);
}

TEST_CASE("two-line corpus round trips") {
  auto path = temp_file("two.jsonl");
  {
    std::ofstream out(path, std::ios::trunc);
    out << R"({"doc_id":"A","collection":"c","title":"t","pub_date":"1700","authors":["x"],"edition_id":"e1","text":"hello"})"
        << "\n";
    out << R"({"doc_id":"B","collection":"c","title":"t","pub_date":"1701-02-03","authors":[],"edition_id":"e2","text":"world"})"
        << "\n";
  }
  Corpus corpus = load_corpus(path);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus.contains("A"));
  CHECK(corpus.contains("B"));
  CHECK(corpus.doc("A").pub_date->year == 1700);
  CHECK_FALSE(corpus.doc("A").pub_date->month);
  CHECK(corpus.doc("B").pub_date->month == 2);
  CHECK(corpus.doc("B").pub_date->day == 3);
  CHECK(corpus.doc("B").authors.empty());

  auto out_path = temp_file("two_rt.jsonl");
  save_corpus(corpus, out_path);
  Corpus reloaded = load_corpus(out_path);
  REQUIRE(reloaded.size() == 2);
  CHECK(reloaded.doc("A").text == "hello");
  CHECK(reloaded.doc("B").pub_date == corpus.doc("B").pub_date);
}

TEST_CASE("duplicate doc_id is rejected with the id named") {
  auto path = temp_file("dup.jsonl");
  {
    std::ofstream out(path, std::ios::trunc);
    for (int i = 0; i < 2; ++i)
      out << R"({"doc_id":"A","collection":"c","title":"t","pub_date":null,"authors":[],"edition_id":"e","text":""})"
          << "\n";
  }
  CHECK_THROWS_WITH_AS(load_corpus(path), doctest::Contains("A"), std::runtime_error);
}

TEST_CASE("parse errors carry the line number") {
  auto path = temp_file("bad.jsonl");
  {
    std::ofstream out(path, std::ios::trunc);
    out << R"({"doc_id":"A","collection":"c","title":"t","pub_date":null,"authors":[],"edition_id":"e","text":""})"
        << "\n";
    out << "{not json}\n";
  }
  CHECK_THROWS_WITH_AS(load_corpus(path), doctest::Contains(":2"), std::runtime_error);
}

TEST_CASE("pub_date wire format") {
  CHECK(format_pub_date(std::nullopt).empty());
  CHECK(format_pub_date(PubDate{1700, {}, {}}) == "1700");
  CHECK(format_pub_date(PubDate{1700, 2, 3}) == "1700-02-03");
  CHECK(parse_pub_date("") == std::nullopt);
  CHECK(parse_pub_date("1700")->key() == std::tuple<int, int, int>{1700, 1, 1});
  CHECK(parse_pub_date("1700-01-01")->key() == std::tuple<int, int, int>{1700, 1, 1});
  CHECK_THROWS(parse_pub_date("17AB"));
  CHECK_THROWS(parse_pub_date("1700-13-01"));
  // year-only compares as January 1st
  CHECK(parse_pub_date("1700")->key() < parse_pub_date("1700-01-02")->key());
}
