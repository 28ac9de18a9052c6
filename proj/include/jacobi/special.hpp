#pragma once

#include "jacobi/scalar.hpp"

#include <vector>

namespace jacobi {

/// x(x-1)...(x-j+1)/j!, exact for any rational x.
Rational gen_binom(const Rational& x, unsigned j);

/// Gamma at a positive half-integer: factorial for integers, otherwise the
/// downward product ending at Gamma(1/2) = sqrt(pi).
Real gamma_half(HalfInt q);

/// Bessel J of non-negative integer or half-integer order for real x > 0.
/// Uses the ascending series below bessel_cutoff(order) and a recurrence
/// branch above it (forward spherical recurrence for half-integer orders,
/// Miller's backward recurrence for integer orders).
Real bessel_j(HalfInt order, const Real& x);
double bessel_cutoff(HalfInt order);
Real bessel_j_series(HalfInt order, const Real& x);
Real bessel_j_recurrence(HalfInt order, const Real& x);
/// Closed trigonometric form for orders 1/2 .. 9/2.
Real bessel_j_closed_half(HalfInt order, const Real& x);

/// e^{2 pi i a / c}; exact for a/c in (1/4)Z.
Complex root_of_unity(const Rational& a, long c);

/// Table of e_c(j) = e^{2 pi i j / c} for j = 0 .. c-1.
class RootTable {
 public:
  explicit RootTable(long c);
  [[nodiscard]] long order() const { return static_cast<long>(roots_.size()); }
  [[nodiscard]] const Complex& operator[](long j) const;
  /// sum_j counts[j] * e_c(j)
  [[nodiscard]] Complex weighted_sum(const std::vector<long>& counts) const;

 private:
  std::vector<Complex> roots_;
};

long euler_phi(long c);
long mod_inverse(long a, long c);  // requires gcd(a, c) = 1; returns 0 for c = 1
long floor_mod(long a, long c);

}  // namespace jacobi
