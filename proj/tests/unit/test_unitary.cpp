#include "doctest.h"

#include <cmath>
#include <numbers>

#include "pbdcs/error.hpp"
#include "pbdcs/unitary.hpp"

using namespace pbdcs;

namespace {

// Gaussian-elimination determinant, used only on tiny real matrices.
double det(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double d = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (a[p][c] == 0.0) return 0.0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

}  // namespace

TEST_CASE("dft matrices") {
  CHECK(dft_matrix(1) == ComplexMatrix(1, 1, {1.0}));
  CHECK(dft_matrix(2) == ComplexMatrix(2, 2, {1.0, 1.0, 1.0, -1.0}));
  auto h3 = dft_matrix(3);
  cplx inner = 0;
  for (int k = 0; k < 3; ++k) inner += h3(1, k) * std::conj(h3(2, k));
  CHECK(std::abs(inner) < 1e-15);
  // Quarter turns are exact.
  auto h4 = dft_matrix(4);
  CHECK(h4(1, 1) == cplx(0.0, 1.0));
  CHECK(h4(1, 3) == cplx(0.0, -1.0));
  for (int r = 1; r <= 64; ++r) {
    auto h = dft_matrix(r);
    CHECK(max_abs_diff(h * h.adjoint(), ComplexMatrix::identity(r).scaled(r)) <= 1e-10 * r);
    CHECK(is_complex_hadamard(h));
  }
  CHECK_THROWS_AS(dft_matrix(0), Error);
}

TEST_CASE("sylvester matrices") {
  CHECK(sylvester(1) == ComplexMatrix(1, 1, {1.0}));
  CHECK(sylvester(2) == ComplexMatrix(2, 2, {1.0, 1.0, 1.0, -1.0}));
  for (int order : {1, 2, 4, 8, 16, 32}) {
    auto h = sylvester(order);
    CHECK(h.is_real());
    for (auto z : h.data()) CHECK((z == cplx(1.0) || z == cplx(-1.0)));
    for (int i = 0; i < order; ++i) {
      CHECK(h(0, i) == cplx(1.0));
      CHECK(h(i, 0) == cplx(1.0));
    }
    CHECK(h * h.adjoint() == ComplexMatrix::identity(order).scaled(order));
    if (order <= 8) {
      std::vector<std::vector<double>> a(order, std::vector<double>(order));
      for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) a[i][j] = h(i, j).real();
      CHECK(std::abs(det(a)) == doctest::Approx(std::pow(order, order / 2.0)));
    }
  }
  CHECK_THROWS_AS(sylvester(6), Error);
}

TEST_CASE("hadamard recognition") {
  CHECK(is_complex_hadamard(dft_matrix(5)));
  CHECK_FALSE(is_complex_hadamard(ComplexMatrix::identity(3)));
  CHECK_FALSE(is_complex_hadamard(ComplexMatrix(2, 2, {1.0, 1.0, 1.0, 1.0})));
}

TEST_CASE("mutually unbiased bases") {
  for (int p : {2, 3, 5, 7, 11, 13}) {
    auto bases = mub_family(p);
    REQUIRE(bases.size() == static_cast<std::size_t>(p + 1));
    CHECK(bases[0] == ComplexMatrix::identity(p));
    for (const auto& m : bases)
      CHECK(max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(p)) < 1e-12);
    CHECK(max_unbiasedness_deviation(bases) <= 1e-10);
  }
  // Independent spot check for p=3: every entry of M_i^dagger M_j has modulus 1/sqrt(3).
  auto b3 = mub_family(3);
  for (std::size_t i = 0; i < b3.size(); ++i)
    for (std::size_t j = i + 1; j < b3.size(); ++j) {
      auto g = b3[i].adjoint() * b3[j];
      for (auto z : g.data()) CHECK(std::abs(z) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    }
  CHECK_THROWS_AS(mub_family(9), Error);
  CHECK_THROWS_AS(mub_family(1), Error);
}
