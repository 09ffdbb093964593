#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sailroa/sdpa.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace sailroa;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

SdpaProblem sample_problem() {
  SdpaProblem p;
  p.num_constraints = 2;
  p.block_sizes = {2, -2};
  p.rhs = {1.5, -0.25};
  p.entries = {
      {0, 1, 1, 1, 1.0},        {0, 2, 2, 2, -1.0},
      {1, 1, 1, 2, 0.5},        {1, 2, 1, 1, 1.0 / 3.0},
      {2, 1, 2, 2, -2.25e-16},  {2, 2, 2, 2, 7.0},
  };
  return p;
}

}  // namespace

TEST_CASE("write/read round trip reproduces identical tuples") {
  const auto path = temp_file("sailroa_sdpa_roundtrip.dat-s");
  const SdpaProblem p = sample_problem();
  write_sdpa(p, path.string());
  const SdpaProblem q = read_sdpa(path.string());

  CHECK(q.num_constraints == p.num_constraints);
  CHECK(q.block_sizes == p.block_sizes);
  CHECK(q.rhs == p.rhs);
  REQUIRE(q.entries.size() == p.entries.size());
  for (const auto& e : p.entries) {
    bool found = false;
    for (const auto& f : q.entries) found = found || e == f;
    CHECK(found);
  }
  std::filesystem::remove(path);
}

TEST_CASE("writer output is deterministic") {
  const auto path_a = temp_file("sailroa_sdpa_a.dat-s");
  const auto path_b = temp_file("sailroa_sdpa_b.dat-s");
  SdpaProblem p = sample_problem();
  write_sdpa(p, path_a.string());
  // scrambled entry order must not change the file
  std::swap(p.entries[0], p.entries[4]);
  std::swap(p.entries[1], p.entries[3]);
  write_sdpa(p, path_b.string());

  std::ifstream a(path_a), b(path_b);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  CHECK(!sa.empty());
  std::filesystem::remove(path_a);
  std::filesystem::remove(path_b);
}

TEST_CASE("comment lines are skipped on read") {
  const auto path = temp_file("sailroa_sdpa_comments.dat-s");
  {
    std::ofstream out(path);
    out << "* free-form comment\n\"quoted comment\n1\n1\n2\n3.5\n0 1 1 2 -1.25\n";
  }
  const SdpaProblem p = read_sdpa(path.string());
  CHECK(p.num_constraints == 1);
  CHECK(p.block_sizes == std::vector<int>{2});
  CHECK(p.rhs == std::vector<double>{3.5});
  REQUIRE(p.entries.size() == 1);
  CHECK(p.entries[0] == SdpaEntry{0, 1, 1, 2, -1.25});
  std::filesystem::remove(path);
}

TEST_CASE("guards") {
  SdpaProblem empty;
  CHECK_THROWS_AS(write_sdpa(empty, temp_file("x.dat-s").string()),
                  std::invalid_argument);

  SdpaProblem bad = sample_problem();
  bad.rhs.pop_back();
  CHECK_THROWS_AS(write_sdpa(bad, temp_file("x.dat-s").string()),
                  std::invalid_argument);

  CHECK_THROWS_AS(read_sdpa("/nonexistent/file.dat-s"), std::runtime_error);

  const auto path = temp_file("sailroa_sdpa_malformed.dat-s");
  {
    std::ofstream out(path);
    out << "2\n1\n2\n1.0 2.0\n0 1 oops 1 3\n";
  }
  CHECK_THROWS_AS(read_sdpa(path.string()), std::runtime_error);
  std::filesystem::remove(path);
}
