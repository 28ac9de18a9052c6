#include "jacobi/random.hpp"

#include <cstdlib>

namespace jacobi {

HalfIntMatrix random_index(Rng& rng, int g) {
  std::uniform_int_distribution<long> off(-3, 3);
  std::uniform_int_distribution<long> extra(1, 3);
  std::vector<std::vector<long>> t(g, std::vector<long>(g, 0));
  for (int i = 0; i < g; ++i) {
    for (int j = i + 1; j < g; ++j) t[i][j] = t[j][i] = off(rng);
  }
  for (int i = 0; i < g; ++i) {
    long row = 0;
    for (int j = 0; j < g; ++j) {
      if (j != i) row += std::labs(t[i][j]);
    }
    // 2m_ii > sum_j |2m_ij| keeps 2M strictly dominant
    long d = row + extra(rng);
    t[i][i] = d + (d % 2);
  }
  return HalfIntMatrix::from_twice(t);
}

FourierIndex random_support_point(Rng& rng, const HalfIntMatrix& m, long n_max) {
  std::uniform_int_distribution<long> pick_n(0, n_max);
  const int g = m.genus();
  while (true) {
    FourierIndex p{pick_n(rng), IntVector(g)};
    for (int i = 0; i < g; ++i) {
      const long b = coordinate_bound(m, p.n, i);
      p.r[i] = std::uniform_int_distribution<long>(-b, b)(rng);
    }
    if (4 * p.n * m.det() - adjugate_form(m, p.r) >= 0) return p;
  }
}

JacobiExpansion random_rational_expansion(Rng& rng, int weight, const HalfIntMatrix& m, long n_max,
                                          int terms, bool cusp) {
  JacobiExpansion f(weight, JacobiIndex(m), n_max, cusp, ScalarMode::ExactRational);
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 6);
  int placed = 0;
  for (int attempt = 0; attempt < 50 * terms && placed < terms; ++attempt) {
    FourierIndex p = random_support_point(rng, m, n_max);
    if (cusp && 4 * p.n * m.det() - adjugate_form(m, p.r) == 0) continue;
    Rational v(num(rng), den(rng));
    v.canonicalize();
    if (v == 0) continue;
    f.set(p.n, p.r, Scalar(v));
    ++placed;
  }
  return f;
}

}  // namespace jacobi
