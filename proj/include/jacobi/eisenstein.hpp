#pragma once

// Fourier coefficients of the Jacobi Eisenstein series E_{k,M} (odd g):
// singular term + archimedean factor * sum_c c^{-k} (Gauss sum).

#include "jacobi/expansion.hpp"
#include "jacobi/special.hpp"

#include <map>

namespace jacobi {

/// Printed: alpha |M|^{-1/2} (2 pi i disc / (4|M|))^{s-1} with
/// alpha = (2i)^{-g/2} pi csc(pi s) / Gamma(s), s = k - g/2.
/// Corrected: (2i)^{-g/2} |M|^{-1/2} (-2 pi i)^s (disc/(4|M|))^{s-1} / Gamma(s),
/// which is exactly twice the printed value for odd g and is the
/// normalisation that reproduces E_{k,1}(0,0) = 1 with integral coefficients.
enum class GammaNormalization { Corrected, Printed };

struct EisensteinParams {
  int k = 4;
  HalfIntMatrix m = HalfIntMatrix::scalar(1);
  long c_max = 100;
  unsigned precision_bits = kDefaultPrecisionBits;
  GammaNormalization normalization = GammaNormalization::Corrected;
};

/// Throws ValidationError unless g is odd and k > g + 2.
void check_eisenstein_params(int k, const HalfIntMatrix& m);

/// (2i)^{-g/2} pi csc(pi (k - g/2)) / Gamma(k - g/2); principal branch.
Complex printed_alpha(int k, int g);

/// Zero when disc <= 0.
Complex archimedean_gamma(int k, const HalfIntMatrix& m, long n, const IntVector& r,
                          GammaNormalization norm = GammaNormalization::Corrected);

/// #{lambda in Z^g : M[lambda] = n, 2 lambda^t M = r}.
long singular_term(const HalfIntMatrix& m, long n, const IntVector& r);

/// sum_{d in (Z/c)^*} sum_{lambda mod c} e_c(a M[lambda] + n d - r.lambda),
/// a = d^{-1} mod c in [0, c).
Complex gauss_sum(const HalfIntMatrix& m, long c, long n, const IntVector& r);

/// Gauss sums with per-modulus root tables and unit inverses reused
/// across support points.
class GaussSumTable {
 public:
  GaussSumTable(HalfIntMatrix m, long c_max);
  [[nodiscard]] Complex operator()(long c, long n, const IntVector& r) const;
  [[nodiscard]] long c_max() const { return static_cast<long>(roots_.size()); }

 private:
  HalfIntMatrix m_;
  std::vector<RootTable> roots_;                        // index c - 1
  std::vector<std::vector<std::pair<long, long>>> units_;  // (d, d^{-1})
};

struct CoeffEstimate {
  Complex value;
  double tail_bound = 0;  // bound on the neglected part of the c-series
};

/// Requires 4n >= M^{-1}[r].
CoeffEstimate eis_coeff(const EisensteinParams& p, long n, const IntVector& r);
CoeffEstimate eis_coeff(const EisensteinParams& p, const GaussSumTable& table, long n,
                        const IntVector& r);

/// E_{k,M} truncated at n_max; coefficients depend only on
/// (disc, r mod Z^g 2M) and are computed once per class.
JacobiExpansion eisenstein_expansion(const EisensteinParams& p, long n_max,
                                     double* max_tail = nullptr);

}  // namespace jacobi
