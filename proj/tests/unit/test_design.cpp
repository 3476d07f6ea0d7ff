#include "doctest.h"

#include <algorithm>
#include <functional>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pbdcs/design.hpp"
#include "pbdcs/error.hpp"

using namespace pbdcs;

namespace {

const std::vector<Block> kFano = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                                  {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};

// Independent pair count: every unordered pair looked up in every block.
int pair_multiplicity(const Design& d, int x, int y) {
  int count = 0;
  for (const auto& b : d.blocks())
    count += std::count(b.begin(), b.end(), x) && std::count(b.begin(), b.end(), y);
  return count;
}

void check_exact_coverage(const Design& d) {
  for (int x = 0; x < d.v(); ++x)
    for (int y = x + 1; y < d.v(); ++y) REQUIRE(pair_multiplicity(d, x, y) == 1);
  auto s = stats(d);
  for (int x = 0; x < d.v(); ++x) {
    int covered = 0;
    for (const auto& b : d.blocks())
      if (std::count(b.begin(), b.end(), x)) covered += static_cast<int>(b.size()) - 1;
    CHECK(covered == d.v() - 1);
  }
  long long total = 0;
  for (int r : s.replication) total += r;
  CHECK(total == s.sum_block_sizes);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("validate flags uncovered and doubled pairs") {
  Design fano(7, kFano, DesignKind::PBD);
  CHECK(validate(fano).ok);

  auto six = kFano;
  six.pop_back();
  auto report = validate(Design(7, six, DesignKind::PBD));
  CHECK_FALSE(report.ok);
  CHECK(report.violations.size() == 3);
  for (const auto& v : report.violations) CHECK(v.count == 0);
  CHECK(validate(Design(7, six, DesignKind::Packing)).ok);

  auto doubled = kFano;
  doubled.push_back({0, 1, 3});
  auto rep2 = validate(Design(7, doubled, DesignKind::Packing));
  CHECK_FALSE(rep2.ok);
  CHECK(rep2.violations.size() == 3);
}

TEST_CASE("structural errors on construction") {
  CHECK(code_of([] { Design(3, {{0, 3}}, DesignKind::PBD); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { Design(3, {{0, 0, 1}}, DesignKind::PBD); }) == ErrorCode::DuplicatePoint);
  CHECK(code_of([] { Design(3, {{1}}, DesignKind::PBD); }) == ErrorCode::Malformed);
}

TEST_CASE("stats") {
  auto s = stats(Design(7, kFano, DesignKind::PBD));
  CHECK(s.n_blocks == 7);
  CHECK(s.block_sizes == std::map<int, int>{{3, 7}});
  CHECK(s.sum_block_sizes == 21);
  CHECK(s.r_min() == 3);
  CHECK(s.r_max() == 3);

  auto one = stats(Design(3, {{0, 1, 2}}, DesignKind::PBD));
  CHECK(one.n_blocks == 1);
  CHECK(one.replication == std::vector<int>{1, 1, 1});
  CHECK(one.sum_block_sizes == 3);

  auto ag = stats(gen_affine_plane(3));
  CHECK(ag.n_blocks == 12);
  CHECK(ag.sum_block_sizes == 36);
  CHECK(ag.r_min() == 4);
  CHECK(ag.r_max() == 4);
}

TEST_CASE("Bose triple systems") {
  for (int v = 3; v <= 45; v += 6) {
    auto d = gen_sts_bose(v);
    CHECK(d.size() == static_cast<std::size_t>(v * (v - 1) / 6));
    CHECK(validate(d).ok);
    check_exact_coverage(d);
  }
  CHECK(gen_sts_bose(3).blocks() == std::vector<Block>{{0, 1, 2}});
  auto s15 = stats(gen_sts_bose(15));
  CHECK(s15.n_blocks == 35);
  CHECK(s15.r_min() == 7);
  CHECK(s15.r_max() == 7);
  CHECK_THROWS_AS(gen_sts_bose(7), Error);
  CHECK_THROWS_AS(gen_sts_bose(1), Error);
}

TEST_CASE("finite planes") {
  for (int q : {2, 3, 5, 7}) {
    auto pg = gen_projective_plane(q);
    auto ps = stats(pg);
    CHECK(pg.v() == q * q + q + 1);
    CHECK(ps.n_blocks == static_cast<std::size_t>(q * q + q + 1));
    CHECK(ps.block_sizes == std::map<int, int>{{q + 1, q * q + q + 1}});
    CHECK(ps.r_min() == q + 1);
    check_exact_coverage(pg);

    auto ag = gen_affine_plane(q);
    auto as = stats(ag);
    CHECK(ag.v() == q * q);
    CHECK(as.n_blocks == static_cast<std::size_t>(q * q + q));
    CHECK(as.block_sizes == std::map<int, int>{{q, q * q + q}});
    CHECK(as.r_max() == q + 1);
    check_exact_coverage(ag);
  }
  CHECK_THROWS_AS(gen_projective_plane(4), Error);
  CHECK_THROWS_AS(gen_affine_plane(6), Error);
}

TEST_CASE("exact-cover search") {
  auto fano = gen_pbd_exact_cover(7, {3});
  REQUIRE(fano.status == SearchStatus::Found);
  CHECK(fano.design->size() == 7);
  check_exact_coverage(*fano.design);

  PbdSearchOptions opts;
  opts.force_blocks = {{0, 1, 2, 3, 4}};
  opts.exact_counts = {{5, 1}};
  auto r = gen_pbd_exact_cover(11, {3, 5}, opts);
  REQUIRE(r.status == SearchStatus::Found);
  auto s = stats(*r.design);
  CHECK(s.block_sizes == std::map<int, int>{{3, 15}, {5, 1}});
  CHECK(r.design->blocks()[0] == Block{0, 1, 2, 3, 4});
  check_exact_coverage(*r.design);

  // Arithmetic rules v=6 out before any node is expanded: 5 is not an integer replication.
  auto six = gen_pbd_exact_cover(6, {3});
  CHECK_FALSE(six.design.has_value());
  CHECK(six.status == SearchStatus::Infeasible);
  CHECK(six.nodes == 0);

  // Pair-count arithmetic: 9 points with K={4} cannot work (36 pairs, 6 per block, r=8/3).
  CHECK(gen_pbd_exact_cover(9, {4}).status == SearchStatus::Infeasible);

  // v=13, K={4}: the search finds PG(2,3)'s parameters.
  auto p13 = gen_pbd_exact_cover(13, {4});
  REQUIRE(p13.status == SearchStatus::Found);
  CHECK(p13.design->size() == 13);

  CHECK_THROWS_AS(gen_pbd_exact_cover(kExactCoverMaxV + 1, {3}), Error);
}

TEST_CASE("search is deterministic") {
  auto a = gen_pbd_exact_cover(9, {3});
  auto b = gen_pbd_exact_cover(9, {3});
  REQUIRE(a.design);
  CHECK(a.design->blocks() == b.design->blocks());
  CHECK(a.nodes == b.nodes);
}

TEST_CASE("greedy packing") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto p7 = greedy_packing(7, {3}, seed);
    CHECK(p7.kind() == DesignKind::Packing);
    CHECK(validate(p7).ok);
    CHECK(p7.size() >= 5);
    CHECK(p7.size() <= 7);

    auto p13 = greedy_packing(13, {4}, seed);
    CHECK(validate(p13).ok);
    CHECK(p13.size() >= 9);
    CHECK(p13.size() <= 13);
    for (int x = 0; x < 13; ++x)
      for (int y = x + 1; y < 13; ++y) CHECK(pair_multiplicity(p13, x, y) <= 1);

    CHECK(greedy_packing(13, {4}, seed) == p13);
  }
  CHECK(greedy_packing(3, {3}, 5).size() == 1);
  CHECK_THROWS_AS(greedy_packing(3, {4}, 0), Error);
}

TEST_CASE("pbd text format") {
  Design fano(7, kFano, DesignKind::PBD);
  std::stringstream ss;
  format_design(fano, ss);
  CHECK(ss.str().rfind("v 7 PBD\n", 0) == 0);
  CHECK(parse_design(ss) == fano);

  auto dir = std::filesystem::temp_directory_path() / "pbdcs_design_io";
  std::filesystem::create_directories(dir);
  auto path = (dir / "fano.pbd").string();
  write_design(fano, path);
  CHECK(read_design(path) == fano);

  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_design(in);
  };
  auto commented = parse("# header\nv 3 PACKING\n0 1 2  # block\n\n");
  CHECK(commented.kind() == DesignKind::Packing);
  CHECK(commented.size() == 1);

  CHECK(code_of([&] { parse("v 3 PBD\n0 1 3\n"); }) == ErrorCode::OutOfRange);
  CHECK(code_of([&] { parse("v 3 PBD\n0 1 1\n"); }) == ErrorCode::DuplicatePoint);
  CHECK(code_of([&] { parse("v 3 PBD\n0 1 2\n   \n"); }) == ErrorCode::Malformed);
  CHECK(code_of([&] { parse("v 3 PBD\n0 x 2\n"); }) == ErrorCode::Malformed);
  CHECK(code_of([&] { parse("3 PBD\n0 1 2\n"); }) == ErrorCode::Malformed);
  CHECK(code_of([&] { parse("v 3 PBD\n0\n"); }) == ErrorCode::Malformed);
  CHECK(code_of([] { read_design("/nonexistent/dir/x.pbd"); }) == ErrorCode::Io);
}
