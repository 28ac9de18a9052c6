#pragma once

// Seeded generators of valid inputs for identity checks.

#include "jacobi/expansion.hpp"

#include <random>

namespace jacobi {

using Rng = std::mt19937_64;

/// Diagonally dominant 2M with even diagonal and entries of both parities.
HalfIntMatrix random_index(Rng& rng, int g);

/// Support point (n, r) with 0 <= n <= n_max and 4n >= M^{-1}[r].
FourierIndex random_support_point(Rng& rng, const HalfIntMatrix& m, long n_max);

/// Rational expansion with up to `terms` random coefficients p/q.
JacobiExpansion random_rational_expansion(Rng& rng, int weight, const HalfIntMatrix& m, long n_max,
                                          int terms, bool cusp = false);

}  // namespace jacobi
