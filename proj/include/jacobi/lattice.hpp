#pragma once

// Exact linear algebra for half-integral index matrices M and the
// discriminant data attached to Fourier indices (n, r).

#include "jacobi/scalar.hpp"

#include <compare>
#include <vector>

namespace jacobi {

using IntVector = std::vector<long>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Positive-definite symmetric half-integral g x g matrix, stored as the
/// integer matrix 2M (even diagonal). Determinant and adjugate are cached.
class HalfIntMatrix {
 public:
  /// Validates symmetry, even diagonal and positive definiteness;
  /// throws ValidationError otherwise.
  static HalfIntMatrix from_twice(const std::vector<std::vector<long>>& twice_m);
  static HalfIntMatrix scalar(long m);  // g = 1, M = (m)

  [[nodiscard]] int genus() const { return static_cast<int>(twice_.size()); }
  [[nodiscard]] long twice(int i, int j) const { return twice_[i][j]; }
  [[nodiscard]] const std::vector<std::vector<long>>& twice_rows() const { return twice_; }
  [[nodiscard]] Rational entry(int i, int j) const {
    Rational q(twice_[i][j], 2);
    q.canonicalize();
    return q;
  }
  [[nodiscard]] const Rational& det() const { return det_; }
  /// Cofactor matrix (symmetric); adjugate() * M = det() * Id.
  [[nodiscard]] const RationalMatrix& adjugate() const { return adj_; }

  friend HalfIntMatrix operator+(const HalfIntMatrix& a, const HalfIntMatrix& b);
  friend bool operator==(const HalfIntMatrix& a, const HalfIntMatrix& b) {
    return a.twice_ == b.twice_;
  }

 private:
  HalfIntMatrix() = default;
  std::vector<std::vector<long>> twice_;
  Rational det_;
  RationalMatrix adj_;
};

Rational determinant(RationalMatrix a);
/// Exact (|M|, M~).
std::pair<Rational, RationalMatrix> det_and_adjugate(const HalfIntMatrix& m);
/// x^t M x.
Rational quad_form(const HalfIntMatrix& m, const std::vector<Rational>& x);
Rational quad_form(const HalfIntMatrix& m, const IntVector& x);
/// M~[r^t] = r M~ r^t.
Rational adjugate_form(const HalfIntMatrix& m, const IntVector& r);
/// r M^{-1} s^t.
Rational inverse_bilinear(const HalfIntMatrix& m, const IntVector& r, const IntVector& s);

struct SupportPoint {
  long n = 0;
  IntVector r;
  Rational det_m;   // |M|
  Rational adj_q;   // M~[r^t]
  Rational disc;    // 4n|M| - M~[r^t]
  Rational big_d;   // det(2T), T = (n, r/2; r^t/2, M)
};

/// All cached quantities are exact; big_d is the determinant of 2T itself.
SupportPoint support_point(const HalfIntMatrix& m, long n, const IntVector& r);

/// Every (n, r) with 0 <= n <= n_max and 4n >= M^{-1}[r^t] (strict when
/// cusp_only), ordered lexicographically by (n, r).
std::vector<SupportPoint> enumerate_support(const HalfIntMatrix& m, long n_max, bool cusp_only);

/// |r_i| bound for points with Fourier index n: r_i^2 <= 4 n m_ii.
long coordinate_bound(const HalfIntMatrix& m, long n, int i);

/// True iff d = lambda^t (2M) for some integer vector lambda.
bool in_index_lattice(const HalfIntMatrix& m, const IntVector& d);

/// Canonical key for the class of r modulo Z^g 2M: fractional parts of
/// (2M)^{-1} r^t.
std::vector<Rational> lattice_class(const HalfIntMatrix& m, const IntVector& r);

}  // namespace jacobi
