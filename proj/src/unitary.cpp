#include "pbdcs/unitary.hpp"

#include <cmath>
#include <numbers>

#include "pbdcs/error.hpp"
#include "pbdcs/number_theory.hpp"

namespace pbdcs {

namespace {

constexpr const char* kModule = "unitary";

// exp(2 pi i num / den) with num reduced mod den.
cplx root_of_unity(long num, long den) {
  num %= den;
  if (num < 0) num += den;
  if ((4 * num) % den == 0) {
    switch ((4 * num) / den) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den));
}

}  // namespace

ComplexMatrix dft_matrix(int r) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, kModule, "DFT order must be >= 1");
  ComplexMatrix h(r, r);
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) h(j, k) = root_of_unity(static_cast<long>(j) * k, r);
  return h;
}

ComplexMatrix sylvester(int order) {
  if (!is_power_of_two(order))
    throw Error(ErrorCode::UnsupportedOrder, kModule,
                "Sylvester order must be a power of two, got " + std::to_string(order));
  ComplexMatrix h(order, order);
  for (int j = 0; j < order; ++j)
    for (int k = 0; k < order; ++k) h(j, k) = (__builtin_popcount(j & k) % 2 == 0) ? 1.0 : -1.0;
  return h;
}

bool is_complex_hadamard(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols() || h.rows() == 0) return false;
  for (const auto& z : h.data()) {
    const double m = std::abs(z);
    if (m < 1.0 - tol || m > 1.0 + tol) return false;
  }
  const double r = static_cast<double>(h.rows());
  const auto gram = h * h.adjoint();
  return max_abs_diff(gram, ComplexMatrix::identity(h.rows()).scaled(r)) <= tol * r;
}

std::vector<ComplexMatrix> mub_family(int p) {
  if (!is_prime(p))
    throw Error(ErrorCode::InvalidArgument, kModule, "MUB family needs prime dimension, got " + std::to_string(p));
  std::vector<ComplexMatrix> bases;
  bases.push_back(ComplexMatrix::identity(p));
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  if (p == 2) {
    bases.push_back(ComplexMatrix(2, 2, {1, 1, 1, -1}).scaled(scale));
    bases.push_back(ComplexMatrix(2, 2, {1, 1, cplx{0, 1}, cplx{0, -1}}).scaled(scale));
    return bases;
  }
  for (int t = 1; t <= p; ++t) {
    ComplexMatrix m(p, p);
    for (long j = 0; j < p; ++j)
      for (long k = 0; k < p; ++k) m(j, k) = root_of_unity(t * j * j + k * j, p) * scale;
    bases.push_back(std::move(m));
  }
  return bases;
}

double max_unbiasedness_deviation(const std::vector<ComplexMatrix>& bases) {
  if (bases.empty()) return 0.0;
  const double target = 1.0 / std::sqrt(static_cast<double>(bases.front().rows()));
  double worst = 0.0;
  for (std::size_t i = 0; i < bases.size(); ++i)
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      const auto overlap = bases[i].adjoint() * bases[j];
      for (const auto& z : overlap.data()) worst = std::max(worst, std::abs(std::abs(z) - target));
    }
  return worst;
}

}  // namespace pbdcs
