#include "doctest.h"

#include "jacobi/error.hpp"
#include "jacobi/poincare.hpp"
#include "oracle/brute.hpp"

#include <mpfr.h>

#include <cmath>

using namespace jacobi;

namespace {

double to_d(const Real& x) { return static_cast<double>(x); }

Real mpfr_gamma_of(double x) {
  mpfr_t a;
  mpfr_init2(a, current_precision_bits());
  mpfr_set_d(a, x, MPFR_RNDN);
  mpfr_gamma(a, a, MPFR_RNDN);
  Real out = Real(a);
  mpfr_clear(a);
  return out;
}

}  // namespace

TEST_CASE("lambda constant") {
  PrecisionScope scope(128);
  const auto m1 = HalfIntMatrix::scalar(1);
  const Real expect = mpfr_gamma_of(8.5) / 2 *
                      boost::multiprecision::pow(3 * real_pi(), Real(-17) / 2);
  CHECK(to_d(boost::multiprecision::abs(lambda_const(10, m1, 3) - expect) / expect) < 1e-30);
  for (long d = 1; d < 12; ++d) CHECK(lambda_const(10, m1, d + 1) < lambda_const(10, m1, d));
  const auto a = HalfIntMatrix::from_twice({{2, 1, 0}, {1, 2, 0}, {0, 0, 2}});
  for (int k : {7, 9}) {
    const Real ratio = lambda_const(k, a, 20) / lambda_const(k, a, 5);
    const Real expect_ratio = boost::multiprecision::pow(Real(4), Real(-k) + Real(3) / 2 + 1);
    CHECK(to_d(boost::multiprecision::abs(ratio / expect_ratio - 1)) < 1e-30);
  }
  CHECK_THROWS_AS(lambda_const(10, m1, 0), ValidationError);
}

TEST_CASE("delta term") {
  const auto m = HalfIntMatrix::scalar(1);
  CHECK(delta_term(m, 1, {0}, 1, {0}) == 1);
  CHECK(delta_term(m, 1, {0}, 1, {1}) == 0);
  CHECK(delta_term(m, 1, {0}, 2, {2}) == 1);
  CHECK(delta_term(m, 2, {2}, 1, {0}) == 1);
  CHECK(delta_term(m, 3, {1}, 3, {-1}) == 1);
  CHECK(delta_term(m, 3, {1}, 3, {0}) == 0);
  CHECK(delta_term(HalfIntMatrix::scalar(2), 3, {1}, 3, {-1}) == 0);
  const auto m3 = HalfIntMatrix::scalar(3);
  for (long n = 1; n <= 4; ++n) {
    for (long r = -5; r <= 5; ++r) {
      for (long n2 = 1; n2 <= 4; ++n2) {
        for (long r2 = -5; r2 <= 5; ++r2) {
          CHECK(delta_term(m3, n, {r}, n2, {r2}) == delta_term(m3, n2, {r2}, n, {r}));
        }
      }
    }
  }
}

TEST_CASE("Kloosterman sums against the defining double sum") {
  PrecisionScope scope(128);
  const auto one = kloosterman_H(HalfIntMatrix::scalar(1), 1, 1, {0}, 1, {0});
  CHECK(one.re == 1);
  CHECK(one.im == 0);
  for (long m : {1L, 2L, 3L}) {
    const auto mat = HalfIntMatrix::scalar(m);
    for (long c = 1; c <= 9; ++c) {
      for (const auto& [n, r, n2, r2] : std::vector<std::array<long, 4>>{
               {1, 0, 1, 0}, {1, 1, 2, -1}, {2, 1, 3, 2}, {1, -1, 4, 3}}) {
        CAPTURE(m);
        CAPTURE(c);
        const auto ref = oracle::kloosterman_g1(m, c, n, r, n2, r2);
        const auto got = kloosterman_H(mat, c, n, {r}, n2, {r2}).to_double();
        CHECK(std::abs(got - ref) < 1e-10);
        CHECK(std::abs(got) <= std::pow(c, -1.5) * static_cast<double>(euler_phi(c) * c) + 1e-12);
        const auto swapped = kloosterman_H(mat, c, n2, {r2}, n, {r}).to_double();
        CHECK(std::abs(got - swapped) < 1e-10);
      }
    }
  }
}

TEST_CASE("genus two Kloosterman sums obey the trivial bound") {
  PrecisionScope scope(128);
  const auto a = HalfIntMatrix::from_twice({{2, 1}, {1, 2}});
  for (long c = 1; c <= 6; ++c) {
    const double h = to_d(kloosterman_H(a, c, 1, {1, 0}, 2, {1, 1}).abs());
    CHECK(h <= std::pow(static_cast<double>(c), -2.0) * static_cast<double>(euler_phi(c) * c * c) +
                   1e-12);
  }
}

TEST_CASE("parameter validation") {
  PoincareParams p;
  p.k = 3;
  CHECK_THROWS_AS(check_poincare_params(p), ValidationError);
  p.k = 10;
  p.n = 1;
  p.r = {2};
  CHECK_THROWS_AS(check_poincare_params(p), ValidationError);
  p.r = {0};
  CHECK_NOTHROW(check_poincare_params(p));
  CHECK_THROWS_AS(poincare_coeff(p, 1, {2}), ValidationError);
}

TEST_CASE("c_max = 0 leaves the delta terms") {
  PoincareParams p;
  p.k = 10;
  p.m = HalfIntMatrix::scalar(2);
  p.n = 1;
  p.r = {1};
  p.c_max = 0;
  const auto base = poincare_coeff(p, 1, {1});
  CHECK(base.value.re == 1);
  CHECK(base.value.im == 0);
  const auto other = poincare_coeff(p, 1, {-1});
  CHECK(other.value.re == 1);
  p.r = {0};
  CHECK(poincare_coeff(p, 1, {0}).value.re == 2);
}

TEST_CASE("even weight gives r' <-> -r' symmetry") {
  PoincareParams p;
  p.k = 10;
  p.m = HalfIntMatrix::scalar(2);
  p.n = 1;
  p.r = {1};
  p.c_max = 20;
  for (const auto& [n2, r2] : std::vector<std::pair<long, long>>{{1, 1}, {2, 3}, {3, 2}}) {
    const auto a = poincare_coeff(p, n2, {r2});
    const auto b = poincare_coeff(p, n2, {-r2});
    CHECK(to_d((a.value - b.value).abs()) < 1e-25);
  }
  p.k = 11;
  const auto odd = poincare_coeff(p, 2, {3});
  const auto odd_neg = poincare_coeff(p, 2, {-3});
  CHECK(to_d((odd.value + odd_neg.value).abs()) < 1e-25);
}

TEST_CASE("c-series stabilises within its tail bound") {
  PoincareParams p;
  p.k = 10;
  p.m = HalfIntMatrix::scalar(1);
  p.n = 1;
  p.r = {0};
  for (const auto& [n2, r2] : std::vector<std::pair<long, long>>{{1, 0}, {2, 1}, {3, 3}}) {
    p.c_max = 50;
    const auto a = poincare_coeff(p, n2, {r2});
    p.c_max = 100;
    const auto b = poincare_coeff(p, n2, {r2});
    CHECK(to_d((a.value - b.value).abs()) <= a.tail_bound);
    CHECK(b.tail_bound < a.tail_bound);
    CHECK(std::abs(to_d(b.value.im)) < 1e-20);
  }
}

TEST_CASE("assembled expansion is cusp and class-invariant") {
  PoincareParams p;
  p.k = 10;
  p.m = HalfIntMatrix::scalar(2);
  p.n = 1;
  p.r = {0};
  p.c_max = 30;
  double tail = 0;
  const auto e = poincare_expansion(p, 4, &tail);
  CHECK(e.cusp());
  CHECK(tail < 1e-3);
  for (const auto& [key, v] : e.coeffs()) CHECK(e.index().disc(key.n, key.r) > 0);
  // direct evaluation at a point agrees with the class-cached one
  const auto direct = poincare_coeff(p, 4, {5});
  CHECK(to_d((direct.value - e.coeff(4, {5}).to_complex()).abs()) < 1e-25);
}

TEST_CASE("target-r convention differs from base-r") {
  PoincareParams p;
  p.k = 10;
  p.m = HalfIntMatrix::scalar(2);
  p.n = 1;
  p.r = {1};
  p.c_max = 20;
  const auto base = poincare_coeff(p, 2, {3});
  p.convention = HmcConvention::TargetR;
  const auto target = poincare_coeff(p, 2, {3});
  CHECK(to_d((base.value - target.value).abs()) > 1e-6);
}
