#pragma once

// Petersson inner product for g = 1 by quadrature over the Jacobi
// fundamental domain, and the closed-form sides of the bracket/Eisenstein
// inner-product formula.

#include "jacobi/expansion.hpp"
#include "jacobi/poincare.hpp"

#include <complex>
#include <string>

namespace jacobi {

/// Real kernel exp(-kappa pi m y^2 / v) with kappa = 4 (FourPi) or 2 (TwoPi).
enum class KernelConvention { FourPi, TwoPi };

/// Constant multiplying sum disc1^nu b P in the bracket/Poincare expansion:
/// Printed is (2 pi)^{-2 nu} |M2|^{-nu} nu! k2'! / (k2'+nu)!; Corrected is
/// 1 / (2 * Printed), the value measured against independent coefficients.
enum class TheoremConstant { Printed, Corrected };

std::string to_string(KernelConvention k);
std::string to_string(TheoremConstant c);

struct QuadratureSpec {
  int nu = 64;  // grid counts for (u, v, p, q)
  int nv = 64;
  int np = 64;
  int nq = 16;
  double v_max = 8.0;
  KernelConvention kernel = KernelConvention::FourPi;
  unsigned threads = 1;

  /// Resolutions >= 8 and v_max >= 2; throws ValidationError.
  void validate() const;
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0;  // |I(grid) - I(grid / 2)|
};

/// Integral of F conj(G) v^k exp(-kappa pi m y^2/v) v^{-3} du dv dx dy over
/// {|u| <= 1/2, |tau| >= 1, v <= v_max} x {z = p tau + q}, halved for the
/// action of -1 (z -> -z), by a tensor midpoint rule in double precision.
/// The q-direction midpoint sum is applied in closed form per pair of r's.
QuadratureResult petersson_g1(const JacobiExpansion& f, const JacobiExpansion& g,
                              const QuadratureSpec& spec);

/// Checks k = k1 + k2 + 2 nu, M = M1 + M2, k1 > g + 2, k2 > k1 + g + 2.
void check_theorem_hypotheses(int k, const HalfIntMatrix& m, int k1, const HalfIntMatrix& m1,
                              int k2, const HalfIntMatrix& m2, unsigned nu);

Real prop_constant(int k2, const HalfIntMatrix& m2, unsigned nu, TheoremConstant which);

/// c_{k,k2,M,M2,g;nu} as printed: 2^{k'(g-1)-g-2nu} pi^{-k'-2nu} |M|^{k'-1/2}
/// |M2|^{-nu} Gamma(k') nu! k2'! / (k2'+nu)!.
Real theorem_constant_printed(int k, const HalfIntMatrix& m, int k2, const HalfIntMatrix& m2,
                              unsigned nu);

struct AnalyticValue {
  Complex value;
  double tail_bound = 0;
  long terms = 0;
  long excluded = 0;  // points of M1-support off the strict M-support
};

/// c_prop sum disc1^nu conj(b) lambda_{k,M,D} a over strict M-support, n <= n_max.
AnalyticValue prop_represent_value(const JacobiExpansion& f, const JacobiExpansion& g, int k2,
                                   const HalfIntMatrix& m2, unsigned nu, long n_max,
                                   TheoremConstant which = TheoremConstant::Printed);

/// c_thm sum disc1^nu a conj(b) / D^{k'} with D = det(2T) (= disc for g = 1).
/// Corrected multiplies by Corrected/Printed prop constants.
AnalyticValue theorem_rhs(const JacobiExpansion& f, const JacobiExpansion& g, int k2,
                          const HalfIntMatrix& m2, unsigned nu, long n_max,
                          TheoremConstant which = TheoremConstant::Printed);

struct VerifyOptions {
  QuadratureSpec quadrature;
  long c_max = 100;
  long n_max = -1;  // -1: min of the inputs' truncations
  unsigned precision_bits = kDefaultPrecisionBits;
  double tol_algebra = 1e-10;
  double tol_quadrature = 1e-2;
  TheoremConstant gate = TheoremConstant::Printed;  // constant behind quadrature_ok()
};

struct VerificationReport {
  std::complex<double> quadrature;
  double quadrature_error = 0;
  std::complex<double> poincare_rep;
  std::complex<double> theorem_rhs;
  std::complex<double> theorem_rhs_corrected;
  double rel_b_c = 0;
  double rel_a_c = 0;
  double rel_a_b = 0;
  double rel_a_c_corrected = 0;
  double theorem_tail = 0;
  long n_max = 0;
  long terms = 0;
  long excluded = 0;
  VerifyOptions options;
  unsigned nu = 0;
  std::vector<std::string> failed_legs;

  [[nodiscard]] bool algebra_ok() const { return rel_b_c < options.tol_algebra; }
  [[nodiscard]] bool quadrature_ok() const {
    return (options.gate == TheoremConstant::Printed ? rel_a_c : rel_a_c_corrected) <
           options.tol_quadrature;
  }
  [[nodiscard]] std::string to_json() const;
};

/// Builds [G, E_{k2,M2}]_nu, reinstates (2 pi i)^{2 nu}, and compares the
/// quadrature value of <F, [G, E]_nu> with the two closed forms.
VerificationReport verify_theorem(const JacobiExpansion& f, const JacobiExpansion& g, int k2,
                                  const HalfIntMatrix& m2, unsigned nu, const VerifyOptions& opt);

}  // namespace jacobi
