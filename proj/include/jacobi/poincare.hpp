#pragma once

// Fourier coefficients of the Poincare series P_{k,M;(n,r)} via
// Kloosterman-type sums and Bessel functions, and the reproducing
// constant lambda_{k,M,D}.

#include "jacobi/eisenstein.hpp"

namespace jacobi {

/// Which vector pairs with M^{-1} r^t in the e_{2c} factor of H_{M,c}:
/// BaseR uses r' M^{-1} r^t, TargetR uses r' M^{-1} r'^t.
enum class HmcConvention { BaseR, TargetR };

struct PoincareParams {
  int k = 10;
  HalfIntMatrix m = HalfIntMatrix::scalar(1);
  long n = 1;
  IntVector r{0};
  long c_max = 100;
  unsigned precision_bits = kDefaultPrecisionBits;
  HmcConvention convention = HmcConvention::BaseR;
};

/// Throws ValidationError unless k > g + 2 and 4n > M^{-1}[r].
void check_poincare_params(const PoincareParams& p);

/// 2^{(g-1)(k-g/2-1)-g} Gamma(k-g/2-1) pi^{-k+g/2+1} |M|^{k-(g+3)/2} D^{-k+g/2+1}.
Real lambda_const(int k, const HalfIntMatrix& m, const Rational& big_d);

/// 1 iff D(n,r) = D(n',r') and r' - r lies in Z^g 2M.
int delta_term(const HalfIntMatrix& m, long n, const IntVector& r, long n2, const IntVector& r2);

/// c^{-g/2-1} sum_{x mod c} sum_{y in (Z/c)^*} e_c((M[x] + r.x + n) y^{-1} + n' y + r'.x)
///   * e_{2c}(r' M^{-1} s^t), s = r or r' per the convention. For c = 1 the
/// unit group is {0} with inverse 0.
Complex kloosterman_H(const HalfIntMatrix& m, long c, long n, const IntVector& r, long n2,
                      const IntVector& r2, HmcConvention conv = HmcConvention::BaseR);

/// g(n', r') + (-1)^k g(n', -r'); requires 4n' > M^{-1}[r'].
CoeffEstimate poincare_coeff(const PoincareParams& p, long n2, const IntVector& r2);

/// Cusp-flagged truncation; one evaluation per (D', r' mod Z^g 2M).
JacobiExpansion poincare_expansion(const PoincareParams& p, long n_max, double* max_tail = nullptr);

}  // namespace jacobi
