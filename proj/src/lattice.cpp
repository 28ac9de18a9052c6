#include "jacobi/lattice.hpp"

#include "jacobi/error.hpp"

#include <cmath>

namespace jacobi {

Rational determinant(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (a[row][col] == 0) continue;
      Rational f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
    }
  }
  det.canonicalize();
  return det;
}

namespace {

RationalMatrix half_matrix(const std::vector<std::vector<long>>& twice) {
  RationalMatrix m(twice.size(), std::vector<Rational>(twice.size()));
  for (std::size_t i = 0; i < twice.size(); ++i) {
    for (std::size_t j = 0; j < twice.size(); ++j) m[i][j] = Rational(twice[i][j], 2);
  }
  for (auto& row : m) {
    for (auto& v : row) v.canonicalize();
  }
  return m;
}

RationalMatrix minor_of(const RationalMatrix& a, std::size_t skip_row, std::size_t skip_col) {
  RationalMatrix out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == skip_row) continue;
    std::vector<Rational> row;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j != skip_col) row.push_back(a[i][j]);
    }
    out.push_back(std::move(row));
  }
  return out;
}

RationalMatrix cofactors(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix c(n, std::vector<Rational>(n));
  if (n == 1) {
    c[0][0] = 1;
    return c;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational d = determinant(minor_of(a, i, j));
      c[i][j] = ((i + j) % 2 == 0) ? d : Rational(-d);
    }
  }
  return c;
}

}  // namespace

HalfIntMatrix HalfIntMatrix::from_twice(const std::vector<std::vector<long>>& twice_m) {
  const std::size_t g = twice_m.size();
  if (g == 0) throw ValidationError("index matrix must have positive size");
  for (const auto& row : twice_m) {
    if (row.size() != g) throw ValidationError("index matrix must be square");
  }
  for (std::size_t i = 0; i < g; ++i) {
    if (twice_m[i][i] % 2 != 0) {
      throw ValidationError("2M must have an even diagonal (M half-integral)");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (twice_m[i][j] != twice_m[j][i]) throw ValidationError("index matrix must be symmetric");
    }
  }
  // Sylvester: all leading principal minors of 2M positive.
  for (std::size_t k = 1; k <= g; ++k) {
    RationalMatrix lead(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) lead[i][j] = twice_m[i][j];
    }
    if (determinant(lead) <= 0) throw ValidationError("index matrix must be positive definite");
  }
  HalfIntMatrix out;
  out.twice_ = twice_m;
  RationalMatrix m = half_matrix(twice_m);
  out.det_ = determinant(m);
  out.adj_ = cofactors(m);
  return out;
}

HalfIntMatrix HalfIntMatrix::scalar(long m) { return from_twice({{2 * m}}); }

HalfIntMatrix operator+(const HalfIntMatrix& a, const HalfIntMatrix& b) {
  if (a.genus() != b.genus()) throw ValidationError("genus mismatch in index sum");
  auto t = a.twice_;
  for (int i = 0; i < a.genus(); ++i) {
    for (int j = 0; j < a.genus(); ++j) t[i][j] += b.twice_[i][j];
  }
  return HalfIntMatrix::from_twice(t);
}

std::pair<Rational, RationalMatrix> det_and_adjugate(const HalfIntMatrix& m) {
  return {m.det(), m.adjugate()};
}

Rational quad_form(const HalfIntMatrix& m, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != m.genus()) throw ValidationError("quad_form: dimension mismatch");
  Rational s = 0;
  for (int i = 0; i < m.genus(); ++i) {
    for (int j = 0; j < m.genus(); ++j) s += x[i] * m.entry(i, j) * x[j];
  }
  s.canonicalize();
  return s;
}

Rational quad_form(const HalfIntMatrix& m, const IntVector& x) {
  std::vector<Rational> xr(x.begin(), x.end());
  return quad_form(m, xr);
}

Rational adjugate_form(const HalfIntMatrix& m, const IntVector& r) {
  if (static_cast<int>(r.size()) != m.genus()) throw ValidationError("r has wrong length");
  Rational s = 0;
  const auto& adj = m.adjugate();
  for (int i = 0; i < m.genus(); ++i) {
    for (int j = 0; j < m.genus(); ++j) s += adj[i][j] * r[i] * r[j];
  }
  s.canonicalize();
  return s;
}

Rational inverse_bilinear(const HalfIntMatrix& m, const IntVector& r, const IntVector& s) {
  if (static_cast<int>(r.size()) != m.genus() || static_cast<int>(s.size()) != m.genus()) {
    throw ValidationError("vector has wrong length");
  }
  Rational acc = 0;
  const auto& adj = m.adjugate();
  for (int i = 0; i < m.genus(); ++i) {
    for (int j = 0; j < m.genus(); ++j) acc += adj[i][j] * r[i] * s[j];
  }
  acc /= m.det();
  acc.canonicalize();
  return acc;
}

SupportPoint support_point(const HalfIntMatrix& m, long n, const IntVector& r) {
  const int g = m.genus();
  SupportPoint p;
  p.n = n;
  p.r = r;
  p.det_m = m.det();
  p.adj_q = adjugate_form(m, r);
  p.disc = 4 * n * p.det_m - p.adj_q;
  p.disc.canonicalize();
  // 2T = (2n, r; r^t, 2M)
  RationalMatrix two_t(g + 1, std::vector<Rational>(g + 1));
  two_t[0][0] = 2 * n;
  for (int i = 0; i < g; ++i) {
    two_t[0][i + 1] = r[i];
    two_t[i + 1][0] = r[i];
    for (int j = 0; j < g; ++j) two_t[i + 1][j + 1] = m.twice(i, j);
  }
  p.big_d = determinant(std::move(two_t));
  return p;
}

long coordinate_bound(const HalfIntMatrix& m, long n, int i) {
  if (n <= 0) return 0;
  // max r_i over {r : r M^{-1} r^t <= 4n} is sqrt(4n m_ii)
  const long v = 2 * n * m.twice(i, i);
  long b = static_cast<long>(std::sqrt(static_cast<double>(v)));
  while (b * b > v) --b;
  while ((b + 1) * (b + 1) <= v) ++b;
  return b;
}

std::vector<SupportPoint> enumerate_support(const HalfIntMatrix& m, long n_max, bool cusp_only) {
  const int g = m.genus();
  std::vector<SupportPoint> out;
  for (long n = 0; n <= n_max; ++n) {
    IntVector bound(g);
    for (int i = 0; i < g; ++i) bound[i] = coordinate_bound(m, n, i);
    IntVector r(g);
    for (int i = 0; i < g; ++i) r[i] = -bound[i];
    while (true) {
      Rational disc = 4 * n * m.det() - adjugate_form(m, r);
      if (disc > 0 || (!cusp_only && disc == 0)) out.push_back(support_point(m, n, r));
      int i = g - 1;
      while (i >= 0 && r[i] == bound[i]) {
        r[i] = -bound[i];
        --i;
      }
      if (i < 0) break;
      ++r[i];
    }
  }
  return out;
}

namespace {

std::vector<Rational> twice_inverse_apply(const HalfIntMatrix& m, const IntVector& d) {
  // (2M)^{-1} = M~ / (2|M|)
  const int g = m.genus();
  if (static_cast<int>(d.size()) != g) throw ValidationError("vector has wrong length");
  std::vector<Rational> lam(g);
  for (int i = 0; i < g; ++i) {
    Rational s = 0;
    for (int j = 0; j < g; ++j) s += m.adjugate()[i][j] * d[j];
    s /= 2 * m.det();
    s.canonicalize();
    lam[i] = s;
  }
  return lam;
}

}  // namespace

bool in_index_lattice(const HalfIntMatrix& m, const IntVector& d) {
  for (const auto& v : twice_inverse_apply(m, d)) {
    if (v.get_den() != 1) return false;
  }
  return true;
}

std::vector<Rational> lattice_class(const HalfIntMatrix& m, const IntVector& r) {
  auto lam = twice_inverse_apply(m, r);
  for (auto& v : lam) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    v -= fl;
    v.canonicalize();
  }
  return lam;
}

}  // namespace jacobi
