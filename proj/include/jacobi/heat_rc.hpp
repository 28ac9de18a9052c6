#pragma once

// Heat operator and Rankin-Cohen brackets in the normalised convention
// L^ = (2 pi i)^{-2} L, under which rational inputs stay rational.

#include "jacobi/expansion.hpp"

namespace jacobi {

/// Multiplies c(n, r) by disc(n, r)^times; weight += 2 times,
/// nu_power += times. Boundary coefficients are annihilated when times > 0.
JacobiExpansion heat_apply(const JacobiExpansion& f, unsigned times);

/// Per-split weight of the normalised bracket of order nu for inputs of
/// weights k1, k2 and indices m1, m2.
SplitWeight rc_split_weight(int k1, const JacobiIndex& m1, int k2, const JacobiIndex& m2,
                            unsigned nu);

/// Normalised bracket: coefficients of [F, G]_nu divided by (2 pi i)^{2 nu}.
/// For nu > 0 the result is flagged cusp after checking that every
/// boundary coefficient vanishes (NumericalFailure otherwise).
JacobiExpansion rc_bracket(const JacobiExpansion& f, const JacobiExpansion& g, unsigned nu);

/// sum_{l=u}^{nu-v} (-1)^l / ((l-u)! (nu-v-l)!), exact.
Rational vanishing_sum(unsigned nu, unsigned u, unsigned v);

/// Copy of f flagged cusp. Coefficients on the boundary 4n = M^{-1}[r]
/// must have modulus <= tol and are dropped; NumericalFailure otherwise.
JacobiExpansion cusp_part(const JacobiExpansion& f, double tol);

}  // namespace jacobi
