#pragma once

#include <vector>

#include "pbdcs/complex_matrix.hpp"

namespace pbdcs {

inline constexpr double kUnitaryTol = 1e-10;

// Character table of Z_r: entry (j,k) = exp(2 pi i jk / r). Multiples of a
// quarter turn are written exactly.
ComplexMatrix dft_matrix(int r);

// Normalised Sylvester Hadamard matrix of order 2^m (first row and column all ones).
ComplexMatrix sylvester(int order);

// Unimodular entries and H H^dagger = r I, both within tol (the Gram check is scaled by r).
bool is_complex_hadamard(const ComplexMatrix& h, double tol = kUnitaryTol);

// p+1 mutually unbiased bases of C^p as unitary matrices (basis vectors are
// columns). Element 0 is the identity. For odd p, basis t (t = 1..p) has
// entries exp(2 pi i (t j^2 + k j) / p) / sqrt(p), exponent reduced mod p, so
// basis p is the Fourier basis. p = 2 gives the standard qubit triple.
std::vector<ComplexMatrix> mub_family(int p);

// max over i != j of | |(M_i^dagger M_j)_ab| - 1/sqrt(dim) |.
double max_unbiasedness_deviation(const std::vector<ComplexMatrix>& bases);

}  // namespace pbdcs
