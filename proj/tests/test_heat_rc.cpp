#include "doctest.h"

#include "helpers.hpp"
#include "jacobi/error.hpp"
#include "jacobi/eisenstein.hpp"
#include "jacobi/heat_rc.hpp"
#include "jacobi/random.hpp"

using namespace jacobi;
using testing_support::a2;
using testing_support::to_series;

namespace {

mpq_class binom(const mpq_class& x, unsigned j) {
  mpq_class out = 1;
  for (unsigned i = 0; i < j; ++i) out *= (x - i) / (i + 1);
  out.canonicalize();
  return out;
}

mpq_class disc_g1(long m, const oracle::Key& k) { return 4 * k.first * m - k.second[0] * k.second[0]; }

// Bracket weight written out from the heat-operator definition, g = 1.
oracle::RatSeries bracket_g1(const JacobiExpansion& f, long m1, const JacobiExpansion& h, long m2,
                             unsigned nu) {
  const mpq_class t1 = mpq_class(2 * f.weight() - 1, 2) + nu - 1;
  const mpq_class t2 = mpq_class(2 * h.weight() - 1, 2) + nu - 1;
  return oracle::convolve(to_series(f), to_series(h), std::min(f.n_max(), h.n_max()),
                          [&](const oracle::Key& a, const oracle::Key& b) {
                            mpq_class w = 0;
                            for (unsigned l = 0; l <= nu; ++l) {
                              mpq_class term = binom(t1, nu - l) * binom(t2, l);
                              for (unsigned i = 0; i < nu - l; ++i) term *= m1;
                              for (unsigned i = 0; i < l; ++i) term *= m2;
                              // L^l on F, L^{nu-l} on G
                              for (unsigned i = 0; i < l; ++i) term *= disc_g1(m1, a);
                              for (unsigned i = 0; i < nu - l; ++i) term *= disc_g1(m2, b);
                              w += (l % 2 ? -term : term);
                            }
                            return w;
                          });
}

}  // namespace

TEST_CASE("heat_apply multipliers") {
  JacobiExpansion f(4, HalfIntMatrix::scalar(1), 2, false, ScalarMode::ExactRational);
  f.set(1, {0}, Scalar::from_int(1));
  f.set(1, {2}, Scalar::from_int(1));
  const auto h = heat_apply(f, 1);
  CHECK(h.coeff(1, {0}) == Scalar::from_int(4));
  CHECK(h.coeff(1, {2}).is_zero());
  CHECK(h.weight() == 6);
  CHECK(h.nu_power() == 1);
  CHECK(h.cusp());

  JacobiExpansion g(4, a2(), 2, false, ScalarMode::ExactRational);
  g.set(1, {1, 0}, Scalar::from_int(1));
  CHECK(heat_apply(g, 1).coeff(1, {1, 0}) == Scalar::from_int(2));
  CHECK(heat_apply(g, 0) == g);
}

TEST_CASE("heat powers compose") {
  Rng rng(31);
  for (int i = 0; i < 6; ++i) {
    const auto f = random_rational_expansion(rng, 4, random_index(rng, 1 + i % 3), 5, 8);
    CHECK(heat_apply(f, 4) == heat_apply(heat_apply(f, 3), 1));
  }
}

TEST_CASE("vanishing_sum") {
  CHECK(vanishing_sum(2, 0, 0) == 0);
  CHECK(vanishing_sum(1, 0, 0) == 0);
  for (unsigned nu = 1; nu <= 10; ++nu) {
    for (unsigned u = 0; u < nu; ++u) {
      for (unsigned v = 0; u + v < nu; ++v) CHECK(vanishing_sum(nu, u, v) == 0);
    }
    // u + v = nu leaves the single term (-1)^u
    CHECK(vanishing_sum(nu, 1, nu - 1) == -1);
  }
}

TEST_CASE("bracket at nu = 0 is the product") {
  Rng rng(37);
  for (int i = 0; i < 8; ++i) {
    const int g = 1 + i % 3;
    const auto f = random_rational_expansion(rng, 5, random_index(rng, g), 4, 7);
    const auto h = random_rational_expansion(rng, 7, random_index(rng, g), 4, 7);
    CHECK(rc_bracket(f, h, 0) == mul(f, h));
  }
}

TEST_CASE("bracket coefficients match the expanded heat-operator definition") {
  Rng rng(41);
  for (unsigned nu = 1; nu <= 3; ++nu) {
    const long m1 = 1 + static_cast<long>(nu % 2);
    const long m2 = 2;
    const auto f = random_rational_expansion(rng, 5, HalfIntMatrix::scalar(m1), 5, 8, true);
    const auto h = random_rational_expansion(rng, 9, HalfIntMatrix::scalar(m2), 5, 8, true);
    const auto b = rc_bracket(f, h, nu);
    CHECK(to_series(b) == bracket_g1(f, m1, h, m2, nu));
    CHECK(b.weight() == 14 + 2 * static_cast<int>(nu));
    CHECK(b.nu_power() == static_cast<int>(nu));
    CHECK(b.cusp());
  }
}

TEST_CASE("bilinearity and swap symmetry") {
  Rng rng(43);
  for (unsigned nu = 0; nu <= 3; ++nu) {
    const int g = 1 + static_cast<int>(nu) % 3;
    const auto m1 = random_index(rng, g);
    const auto m2 = random_index(rng, g);
    const auto f = random_rational_expansion(rng, 6, m1, 4, 6, nu > 0);
    const auto f2 = random_rational_expansion(rng, 6, m1, 4, 6, nu > 0);
    const auto h = random_rational_expansion(rng, 8, m2, 4, 6, nu > 0);
    CHECK(rc_bracket(add(f, f2), h, nu) == add(rc_bracket(f, h, nu), rc_bracket(f2, h, nu)));
    const Scalar sign = Scalar::from_int(nu % 2 ? -1 : 1);
    CHECK(rc_bracket(f, h, nu) == scale(sign, rc_bracket(h, f, nu)));
  }
}

TEST_CASE("first bracket of a form with itself vanishes") {
  EisensteinParams p;
  p.k = 4;
  const auto e = eisenstein_expansion(p, 4);
  const auto b = rc_bracket(e, e, 1);
  CHECK(b.cusp());
  // complex mode: cancellation is exact up to rounding
  for (const auto& [key, v] : b.coeffs()) {
    CHECK(v.to_complex().abs() < Real("1e-25"));
  }
  Rng rng(2);
  const auto q = random_rational_expansion(rng, 4, HalfIntMatrix::scalar(1), 5, 10);
  CHECK(rc_bracket(q, q, 1).coeffs().empty());
  CHECK(rc_bracket(q, q, 3).coeffs().empty());
}

TEST_CASE("bracket kills the boundary for exact non-cusp inputs") {
  // Theta-type inputs with boundary terms: weights and indices arbitrary,
  // boundary coefficients of the nu = 1 bracket vanish by subadditivity.
  Rng rng(47);
  for (int i = 0; i < 6; ++i) {
    const auto f = random_rational_expansion(rng, 4, HalfIntMatrix::scalar(1), 6, 10);
    const auto h = random_rational_expansion(rng, 8, HalfIntMatrix::scalar(1), 6, 10);
    const auto b = rc_bracket(f, h, 1);
    for (const auto& [key, v] : b.coeffs()) CHECK(b.index().disc(key.n, key.r) > 0);
  }
}

TEST_CASE("bracket rejects mismatched genus") {
  Rng rng(53);
  const auto f = random_rational_expansion(rng, 4, random_index(rng, 1), 3, 4);
  const auto h = random_rational_expansion(rng, 4, random_index(rng, 3), 3, 4);
  CHECK_THROWS_AS(rc_bracket(f, h, 1), ValidationError);
}

TEST_CASE("cusp_part drops negligible boundary terms only") {
  PrecisionScope scope(128);
  JacobiExpansion f(4, HalfIntMatrix::scalar(1), 2, false, ScalarMode::ComplexFloat);
  f.set(1, {2}, Scalar(Complex(Real("1e-30"))));
  f.set(1, {1}, Scalar(Complex(Real(3))));
  const auto c = cusp_part(f, 1e-20);
  CHECK(c.cusp());
  CHECK(c.coeffs().size() == 1);
  f.set(1, {2}, Scalar(Complex(Real("1e-3"))));
  CHECK_THROWS_AS(cusp_part(f, 1e-20), NumericalFailure);
}
