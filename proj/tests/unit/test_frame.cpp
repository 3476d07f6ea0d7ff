#include "doctest.h"

#include <cmath>
#include <set>
#include <sstream>

#include "pbdcs/analysis.hpp"
#include "pbdcs/design.hpp"
#include "pbdcs/error.hpp"
#include "pbdcs/frame.hpp"

using namespace pbdcs;

namespace {

cplx column_inner(const ComplexMatrix& m, std::size_t a, std::size_t b) {
  cplx s = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) s += std::conj(m(r, a)) * m(r, b);
  return s;
}

// Column-group sparsity: a column labelled x is non-zero exactly on the blocks containing x.
void check_support(const Design& d, const FrameMatrix& f) {
  for (std::size_t c = 0; c < f.N(); ++c) {
    int x = f.labels()[c].point;
    for (std::size_t r = 0; r < f.n(); ++r) {
      const auto& b = d.blocks()[r];
      bool in = std::find(b.begin(), b.end(), x) != b.end();
      CHECK((f.entries()(r, c) != cplx(0.0)) == in);
    }
  }
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("con0 on the Fano plane") {
  auto fano = gen_projective_plane(2);
  auto f = build_con0(fano, HadamardPolicy::Dft);
  CHECK(f.n() == 7);
  CHECK(f.N() == 21);
  CHECK(f.tag() == ConstructionTag::Con0);
  check_support(fano, f);
  for (auto z : f.entries().data())
    CHECK((z == cplx(0.0) || std::abs(std::abs(z) - 1.0 / std::sqrt(3.0)) < 1e-15));
  for (std::size_t a = 0; a < f.N(); ++a) {
    CHECK(std::abs(column_inner(f.entries(), a, a)) == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t b = a + 1; b < f.N(); ++b) {
      double ip = std::abs(column_inner(f.entries(), a, b));
      if (f.labels()[a].point == f.labels()[b].point)
        CHECK(ip < 1e-15);
      else
        CHECK(ip == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    }
  }
  // Canonical column order: point, then basis, then Hadamard column.
  for (std::size_t c = 0; c < f.N(); ++c) {
    CHECK(f.labels()[c].point == static_cast<int>(c / 3));
    CHECK(f.labels()[c].sub == static_cast<int>(c % 3));
  }
}

TEST_CASE("con0 small cases and policies") {
  Design single(3, {{0, 1, 2}}, DesignKind::PBD);
  auto f = build_con0(single, HadamardPolicy::Dft);
  CHECK(f.entries() == ComplexMatrix(1, 3, {1.0, 1.0, 1.0}));

  auto ag = gen_affine_plane(3);
  auto real = build_con0(ag, HadamardPolicy::Sylvester);
  CHECK(real.n() == 12);
  CHECK(real.N() == 36);
  CHECK(real.is_real());
  for (auto z : real.entries().data())
    CHECK((z == cplx(0.0) || z == cplx(0.5) || z == cplx(-0.5)));
  check_support(ag, real);

  // STS(9) has r = 4 but STS(15) has r = 7: strict Sylvester refuses, auto falls back.
  auto sts15 = gen_sts_bose(15);
  CHECK(code_of([&] { build_con0(sts15, HadamardPolicy::Sylvester); }) == ErrorCode::UnsupportedOrder);
  CHECK_FALSE(build_con0(sts15, HadamardPolicy::Auto).is_real());
  CHECK(build_con0(ag, HadamardPolicy::Auto).is_real());

  Design isolated(4, {{0, 1, 2}}, DesignKind::Packing);
  CHECK(code_of([&] { build_con0(isolated, HadamardPolicy::Dft); }) == ErrorCode::ZeroReplication);
  Design broken(7, {{0, 1, 2}}, DesignKind::PBD);
  CHECK(code_of([&] { build_con0(broken, HadamardPolicy::Dft); }) == ErrorCode::InvalidDesign);
}

TEST_CASE("con1") {
  auto fano = gen_projective_plane(2);
  auto f = build_con1(fano, HadamardPolicy::Sylvester);
  CHECK(f.n() == 7);
  CHECK(f.N() == 28);
  CHECK(f.tag() == ConstructionTag::Con1);
  check_support(fano, f);
  for (std::size_t c = 0; c < f.N(); ++c) CHECK(column_inner(f.entries(), c, c).real() == doctest::Approx(0.75));

  Design single(3, {{0, 1, 2}}, DesignKind::PBD);
  auto s = build_con1(single, HadamardPolicy::Dft);
  CHECK(s.n() == 1);
  CHECK(s.N() == 6);
  for (auto z : s.entries().data()) CHECK(std::abs(std::abs(z) - 1.0 / std::sqrt(2.0)) < 1e-15);

  auto ag = build_con1(gen_affine_plane(3), HadamardPolicy::Dft);
  CHECK(ag.n() == 12);
  CHECK(ag.N() == 45);
  for (std::size_t c = 0; c < ag.N(); ++c)
    CHECK(column_inner(ag.entries(), c, c).real() == doctest::Approx(0.8).epsilon(1e-14));

  // Order r+1 = 5 has no Sylvester matrix.
  CHECK_THROWS_AS(build_con1(gen_affine_plane(3), HadamardPolicy::Sylvester), Error);
  CHECK_THROWS_AS(build_con1(greedy_packing(7, {3}, 1), HadamardPolicy::Dft), Error);
}

TEST_CASE("mub extension") {
  auto fano = gen_projective_plane(2);
  auto f1 = build_mub_extended(fano, 1);
  CHECK(f1.N() == 21);
  auto c0 = build_con0(fano, HadamardPolicy::Dft);
  auto r1 = analyze(f1);
  auto r0 = analyze(c0);
  CHECK(r1.mip == doctest::Approx(r0.mip).epsilon(1e-12));
  CHECK(r1.min_inner == doctest::Approx(r0.min_inner).epsilon(1e-12));

  auto f3 = build_mub_extended(fano, 3);
  CHECK(f3.n() == 7);
  CHECK(f3.N() == 63);
  CHECK(f3.tag() == ConstructionTag::MubExt);
  std::set<int> bases;
  for (const auto& l : f3.labels()) bases.insert(l.basis);
  CHECK(bases == std::set<int>{1, 2, 3});
  check_support(fano, f3);

  CHECK(code_of([] { build_mub_extended(gen_affine_plane(3), 1); }) == ErrorCode::NonprimeReplication);
  CHECK(code_of([&] { build_mub_extended(fano, 4); }) == ErrorCode::OutOfRange);
  CHECK(code_of([&] { build_mub_extended(fano, 0); }) == ErrorCode::OutOfRange);
  PbdSearchOptions opts;
  opts.force_blocks = {{0, 1, 2, 3, 4}};
  opts.exact_counts = {{5, 1}};
  auto mixed = gen_pbd_exact_cover(11, {3, 5}, opts);
  REQUIRE(mixed.design);
  CHECK(code_of([&] { build_mub_extended(*mixed.design, 1); }) == ErrorCode::NonconstantReplication);
}

TEST_CASE("row normalisation") {
  auto f = build_con0(gen_projective_plane(2), HadamardPolicy::Dft);
  auto g = normalize_rows(f, 1.0);
  CHECK(max_abs_diff(row_gram(g), ComplexMatrix::identity(7)) <= 1e-12);
  CHECK(max_abs_diff(normalize_rows(g, 1.0).entries(), g.entries()) <= 1e-15);
  auto g2 = normalize_rows(f, 2.0);
  CHECK(max_abs_diff(row_gram(g2), ComplexMatrix::identity(7).scaled(4.0)) <= 1e-12);
  CHECK_THROWS_AS(normalize_rows(f, 0.0), Error);
  FrameMatrix zero_row(ComplexMatrix(2, 2, {1.0, 0.0, 0.0, 0.0}),
                       {{0, 0, 0}, {1, 0, 0}}, ConstructionTag::Custom);
  CHECK_THROWS_AS(normalize_rows(zero_row, 1.0), Error);
}

TEST_CASE("frame json round trip") {
  for (const auto& f : {build_con0(gen_sts_bose(9), HadamardPolicy::Dft),
                        build_mub_extended(gen_projective_plane(2), 2),
                        normalize_rows(build_con1(gen_projective_plane(3), HadamardPolicy::Dft), 1.0)}) {
    std::stringstream ss;
    write_frame_json(f, ss);
    auto text = ss.str();
    auto back = read_frame_json(ss);
    CHECK(back == f);
    std::stringstream again;
    write_frame_json(back, again);
    CHECK(again.str() == text);
  }
  std::istringstream bad(R"({"n":1,"N":2,"tag":"CON0","labels":[[0,0,0],[1,0,0]],"re":[1],"im":[0,0]})");
  CHECK_THROWS_AS(read_frame_json(bad), Error);
  std::istringstream junk("not json");
  CHECK_THROWS_AS(read_frame_json(junk), Error);
}
