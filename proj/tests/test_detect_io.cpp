#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "reuse/hits_io.hpp"

using namespace reuse;
namespace fs = std::filesystem;

namespace {

fs::path write_file(const std::string& name, const std::string& content) {
  auto dir = fs::temp_directory_path() / "reuse_tests";
  fs::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path, std::ios::trunc) << content;
  return path;
}

}  // namespace

TEST_CASE("header-only hits file is empty") {
  auto path = write_file("hits_empty.csv", "doc_a,start_a,end_a,doc_b,start_b,end_b\n");
  CHECK(ingest_hits(path).empty());
}

TEST_CASE("hits are canonicalized on ingest") {
  auto path = write_file("hits_swap.csv",
                         "doc_a,start_a,end_a,doc_b,start_b,end_b\n"
                         "B,100,300,A,500,650\n");
  auto hits = ingest_hits(path);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0] == Hit{"A", 500, 650, "B", 100, 300});
}

TEST_CASE("duplicate rows collapse") {
  auto path = write_file("hits_dup.csv",
                         "doc_a,start_a,end_a,doc_b,start_b,end_b\n"
                         "A,1,200,B,5,205\n"
                         "B,5,205,A,1,200\n");
  CHECK(ingest_hits(path).size() == 1);
}

TEST_CASE("empty span is rejected with row number") {
  auto path = write_file("hits_bad_span.csv",
                         "doc_a,start_a,end_a,doc_b,start_b,end_b\n"
                         "A,100,100,B,5,205\n");
  CHECK_THROWS_WITH_AS(ingest_hits(path), doctest::Contains("row 2"), std::runtime_error);
}

TEST_CASE("self-pair is rejected") {
  auto path = write_file("hits_self.csv",
                         "doc_a,start_a,end_a,doc_b,start_b,end_b\n"
                         "A,100,200,A,300,400\n");
  CHECK_THROWS(ingest_hits(path));
}

TEST_CASE("malformed integer is rejected with row number") {
  auto path = write_file("hits_bad_int.csv",
                         "doc_a,start_a,end_a,doc_b,start_b,end_b\n"
                         "A,1,200,B,5,205\n"
                         "A,x,200,B,5,205\n");
  CHECK_THROWS_WITH_AS(ingest_hits(path), doctest::Contains("row 3"), std::runtime_error);
}

TEST_CASE("missing header is rejected") {
  auto path = write_file("hits_no_header.csv", "A,1,200,B,5,205\n");
  CHECK_THROWS(ingest_hits(path));
}

TEST_CASE("write then ingest round trips") {
  std::vector<Hit> hits = {{"A", 1, 200, "B", 5, 205}, {"A", 300, 500, "C", 0, 200}};
  auto dir = fs::temp_directory_path() / "reuse_tests";
  fs::create_directories(dir);
  auto path = dir / "hits_rt.csv";
  write_hits(hits, path);
  CHECK(ingest_hits(path) == hits);
}
