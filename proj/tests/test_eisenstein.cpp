#include "doctest.h"

#include "jacobi/eisenstein.hpp"
#include "jacobi/error.hpp"
#include "oracle/brute.hpp"
#include "oracle/cohen_h.hpp"

#include <cmath>

using namespace jacobi;

namespace {

double to_d(const Real& x) { return static_cast<double>(x); }

}  // namespace

TEST_CASE("the Cohen oracle reproduces known E_{4,1} coefficients") {
  CHECK(oracle::eisenstein_k1(4, 0, 0) == 1);
  CHECK(oracle::eisenstein_k1(4, 1, 0) == 126);
  CHECK(oracle::eisenstein_k1(4, 1, 1) == 56);
  CHECK(oracle::eisenstein_k1(4, 2, 0) == 756);
  CHECK(oracle::eisenstein_k1(4, 2, 1) == 576);
  CHECK(oracle::eisenstein_k1(6, 1, 0) == -330);
  CHECK(oracle::eisenstein_k1(4, 1, 2) == 1);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(check_eisenstein_params(4, HalfIntMatrix::from_twice({{2, 1}, {1, 2}})),
                  ValidationError);
  CHECK_THROWS_AS(check_eisenstein_params(3, HalfIntMatrix::scalar(1)), ValidationError);
  CHECK_NOTHROW(check_eisenstein_params(4, HalfIntMatrix::scalar(1)));
  try {
    check_eisenstein_params(6, HalfIntMatrix::from_twice({{2, 1}, {1, 2}}));
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("cosecant") != std::string::npos);
  }
}

TEST_CASE("archimedean factor against the closed form") {
  PrecisionScope scope(128);
  const auto m = HalfIntMatrix::scalar(1);
  const Real pi = real_pi();
  // alpha (2 pi i)^{5/2}, alpha = (2i)^{-1/2} pi csc(7 pi/2) / Gamma(7/2)
  const Real gamma72 = 15 * boost::multiprecision::sqrt(pi) / 8;
  const Complex two_i_pow = Complex::polar_unit(-pi / 4) * (1 / boost::multiprecision::sqrt(Real(2)));
  const Complex alpha = two_i_pow * (-pi / gamma72);  // csc(7 pi / 2) = -1
  const Complex p = Complex::polar_unit(5 * pi / 4) *
                    boost::multiprecision::pow(2 * pi, Real(5) / 2);
  const Complex expect = alpha * p;
  // Writing the arguments of csc and Gamma as 5/2 instead of k - g/2 = 7/2
  // would scale the value by -5/2.
  const Complex shifted = two_i_pow * (pi / (3 * boost::multiprecision::sqrt(pi) / 4)) * p;
  CHECK(to_d((shifted * (Real(-2) / 5) - expect).abs() / expect.abs()) < 1e-30);
  const Complex printed = archimedean_gamma(4, m, 1, {0}, GammaNormalization::Printed);
  CHECK(to_d((printed - expect).abs() / expect.abs()) < 1e-30);
  const Complex corrected = archimedean_gamma(4, m, 1, {0}, GammaNormalization::Corrected);
  CHECK(to_d((corrected - 2 * expect).abs() / expect.abs()) < 1e-30);
  CHECK(archimedean_gamma(4, m, 1, {2}).is_zero());
  CHECK(archimedean_gamma(4, m, 1, {3}).is_zero());
}

TEST_CASE("archimedean factor grows with disc") {
  PrecisionScope scope(128);
  const auto m = HalfIntMatrix::scalar(1);
  Real prev = 0;
  for (long n = 1; n <= 10; ++n) {
    const Real a = archimedean_gamma(6, m, n, {0}).abs();
    CHECK(a > prev);
    prev = a;
  }
}

TEST_CASE("singular term") {
  const auto m = HalfIntMatrix::scalar(1);
  CHECK(singular_term(m, 0, {0}) == 1);
  CHECK(singular_term(m, 1, {2}) == 1);
  CHECK(singular_term(m, 1, {0}) == 0);
  CHECK(singular_term(m, 4, {4}) == 1);
  CHECK(singular_term(HalfIntMatrix::from_twice({{2, 1, 0}, {1, 2, 0}, {0, 0, 2}}), 0, {0, 0, 0}) == 1);
}

TEST_CASE("gauss sums") {
  PrecisionScope scope(128);
  const auto m = HalfIntMatrix::scalar(1);
  const Complex c1 = gauss_sum(m, 1, 3, {1});
  CHECK(c1.re == 1);
  CHECK(c1.im == 0);
  CHECK(to_d(gauss_sum(m, 2, 1, {0}).abs()) < 1e-30);
  for (long mm : {1L, 2L, 3L}) {
    const auto mat = HalfIntMatrix::scalar(mm);
    const GaussSumTable table(mat, 12);
    for (long c = 1; c <= 12; ++c) {
      for (long n = 0; n <= 3; ++n) {
        for (long r = -2; r <= 2; ++r) {
          CAPTURE(mm);
          CAPTURE(c);
          const auto ref = oracle::gauss_sum_g1(mm, c, n, r);
          const auto got = gauss_sum(mat, c, n, {r}).to_double();
          CHECK(std::abs(got - ref) < 1e-9);
          CHECK(std::abs(table(c, n, {r}).to_double() - ref) < 1e-9);
          CHECK(std::abs(got) <= static_cast<double>(euler_phi(c) * c) + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("E_{4,1} coefficients against the Cohen oracle") {
  EisensteinParams p;
  p.k = 4;
  p.c_max = 300;
  for (const auto& [n, r] : std::vector<std::pair<long, long>>{{0, 0}, {1, 0}, {1, 1}, {1, 2}, {3, 1}}) {
    const auto e = eis_coeff(p, n, {r});
    const double ref = oracle::eisenstein_k1(4, n, r).get_d();
    CAPTURE(n);
    CAPTURE(r);
    CHECK(std::abs(to_d(e.value.re) - ref) / std::abs(ref) < 1e-6);
    CHECK(std::abs(to_d(e.value.im)) < 1e-8);
  }
  // boundary points are exact
  const auto b = eis_coeff(p, 1, {2});
  CHECK(b.value.re == 1);
  CHECK(b.value.im == 0);
}

TEST_CASE("printed normalisation is half the corrected one off the boundary") {
  EisensteinParams p;
  p.k = 6;
  p.c_max = 60;
  EisensteinParams q = p;
  q.normalization = GammaNormalization::Printed;
  const auto a = eis_coeff(p, 2, {1});
  const auto b = eis_coeff(q, 2, {1});
  CHECK(to_d((a.value - 2 * b.value).abs()) < 1e-20 * to_d(a.value.abs()));
}

TEST_CASE("expansion shares values within classes and is flagged non-cusp") {
  EisensteinParams p;
  p.k = 6;
  p.m = HalfIntMatrix::scalar(2);
  p.c_max = 40;
  double tail = 0;
  const auto e = eisenstein_expansion(p, 4, &tail);
  CHECK_FALSE(e.cusp());
  CHECK(e.mode() == ScalarMode::ComplexFloat);
  CHECK(tail > 0);
  // the bound scales like c_max^{g+2-k}
  p.c_max = 80;
  double tail80 = 0;
  eisenstein_expansion(p, 4, &tail80);
  CHECK(tail80 == doctest::Approx(tail / 8).epsilon(0.05));
  // (n, r) -> (n + r + 2, r + 4) preserves 8n - r^2 and the class of r mod 4
  const Scalar a = e.coeff(1, {1});
  const Scalar b = e.coeff(4, {5});
  CHECK(a == b);
  CHECK(e.coeff(0, {0}) == Scalar(Complex(Real(1))));
}

TEST_CASE("genus three Eisenstein coefficients are real") {
  EisensteinParams p;
  p.k = 8;
  p.m = HalfIntMatrix::from_twice({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  p.c_max = 12;
  const auto e = eis_coeff(p, 1, {1, 0, 0});
  CHECK(std::abs(to_d(e.value.im)) < 1e-6 * std::abs(to_d(e.value.re)));
}
