#include "jacobi/special.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jacobi {

namespace bmp = boost::multiprecision;

Rational gen_binom(const Rational& x, unsigned j) {
  Rational num = 1;
  Rational den = 1;
  for (unsigned i = 0; i < j; ++i) {
    num *= x - i;
    den *= i + 1;
  }
  Rational out = num / den;
  out.canonicalize();
  return out;
}

Real gamma_half(HalfInt q) {
  if (q.twice <= 0) throw std::domain_error("gamma_half: argument must be positive");
  if (q.is_integer()) {
    Integer f = 1;
    for (long i = 2; i < q.twice / 2; ++i) f *= i;
    return to_real(f);
  }
  // Gamma(q) = (q-1)(q-2)...(1/2) sqrt(pi)
  Rational prod = 1;
  for (long t = q.twice - 2; t > 0; t -= 2) prod *= HalfInt{t}.to_rational();
  return to_real(prod) * bmp::sqrt(real_pi());
}

double bessel_cutoff(HalfInt order) { return std::max(12.0, static_cast<double>(order.twice)); }

namespace {

void require_bessel_domain(HalfInt order, const Real& x) {
  if (x <= 0) throw std::domain_error("bessel_j: argument must be positive");
  if (order.twice < 0) throw std::domain_error("bessel_j: negative order unsupported");
}

}  // namespace

Real bessel_j_series(HalfInt order, const Real& x) {
  require_bessel_domain(order, x);
  const unsigned bits = current_precision_bits();
  // Terms peak near e^x before the alternating sum settles; carry guard bits.
  const double xd = x.convert_to<double>();
  const unsigned guard = static_cast<unsigned>(xd * 1.4426950408889634) + 32;
  Real result;
  {
    PrecisionScope scope(bits + guard);
    Real xg(x);
    Real half = xg / 2;
    Real half_sq = half * half;
    Real nu = order.to_real();
    Real term = bmp::pow(half, nu) / gamma_half(HalfInt{order.twice + 2});
    Real sum = term;
    const Real eps = bmp::ldexp(Real(1), -static_cast<int>(bits + guard));
    for (long j = 1; j < 100000; ++j) {
      term *= -half_sq / (Real(j) * (nu + j));
      sum += term;
      if (j > xd && bmp::abs(term) <= eps * bmp::abs(sum)) break;
    }
    result = sum;
  }
  return Real(result);
}

Real bessel_j_recurrence(HalfInt order, const Real& x) {
  require_bessel_domain(order, x);
  const unsigned bits = current_precision_bits();
  Real result;
  if (!order.is_integer()) {
    // Spherical Bessel j_l with forward recurrence; stable while l < x.
    PrecisionScope scope(bits + 32);
    Real xg(x);
    const long l_target = (order.twice - 1) / 2;
    Real s = bmp::sin(xg);
    Real c = bmp::cos(xg);
    Real j_prev = s / xg;
    Real j_cur = s / (xg * xg) - c / xg;
    if (l_target == 0) {
      j_cur = j_prev;
    } else {
      for (long l = 1; l < l_target; ++l) {
        Real next = Real(2 * l + 1) / xg * j_cur - j_prev;
        j_prev = j_cur;
        j_cur = next;
      }
    }
    result = bmp::sqrt(2 * xg / real_pi()) * j_cur;
  } else {
    // Miller: recur downward from a start index well past max(order, x),
    // normalise with J_0 + 2 sum J_{2k} = 1.
    PrecisionScope scope(bits + 64);
    Real xg(x);
    const long n = order.twice / 2;
    const double xd = x.convert_to<double>();
    long start = static_cast<long>(std::max<double>(n, xd)) + static_cast<long>(bits / 2) + 40;
    if (start % 2) ++start;
    Real j_next = 0;
    Real j_cur = bmp::ldexp(Real(1), -static_cast<int>(bits));
    Real norm = 0;
    Real wanted = 0;
    for (long k = start; k > 0; --k) {
      Real j_prev = Real(2 * k) / xg * j_cur - j_next;
      j_next = j_cur;
      j_cur = j_prev;
      const long idx = k - 1;  // j_cur holds J_{k-1}
      if (idx == n) wanted = j_cur;
      if (idx == 0) {
        norm += j_cur;
      } else if (idx % 2 == 0) {
        norm += 2 * j_cur;
      }
    }
    result = wanted / norm;
  }
  return Real(result);
}

Real bessel_j(HalfInt order, const Real& x) {
  require_bessel_domain(order, x);
  if (x.convert_to<double>() < bessel_cutoff(order)) return bessel_j_series(order, x);
  return bessel_j_recurrence(order, x);
}

Real bessel_j_closed_half(HalfInt order, const Real& x) {
  require_bessel_domain(order, x);
  if (order.is_integer() || order.twice > 9) {
    throw std::domain_error("closed form available for orders 1/2 .. 9/2 only");
  }
  const Real s = bmp::sin(x);
  const Real c = bmp::cos(x);
  const Real x2 = x * x;
  const Real x3 = x2 * x;
  const Real x4 = x3 * x;
  const Real x5 = x4 * x;
  Real j;
  switch (order.twice) {
    case 1: j = s / x; break;
    case 3: j = s / x2 - c / x; break;
    case 5: j = (3 / x3 - 1 / x) * s - 3 / x2 * c; break;
    case 7: j = (15 / x4 - 6 / x2) * s - (15 / x3 - 1 / x) * c; break;
    default: j = (105 / x5 - 45 / x3 + 1 / x) * s - (105 / x4 - 10 / x2) * c; break;
  }
  return bmp::sqrt(2 * x / real_pi()) * j;
}

Complex root_of_unity(const Rational& a, long c) {
  if (c < 1) throw std::domain_error("root_of_unity: modulus must be positive");
  Rational t = a / c;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  t -= fl;
  Rational quarter = t * 4;
  quarter.canonicalize();
  if (quarter.get_den() == 1) return i_power(quarter.get_num().get_si());
  return Complex::polar_unit(2 * real_pi() * to_real(t));
}

RootTable::RootTable(long c) {
  if (c < 1) throw std::domain_error("RootTable: modulus must be positive");
  roots_.reserve(static_cast<std::size_t>(c));
  for (long j = 0; j < c; ++j) roots_.push_back(root_of_unity(Rational(j), c));
}

const Complex& RootTable::operator[](long j) const {
  return roots_[static_cast<std::size_t>(floor_mod(j, order()))];
}

Complex RootTable::weighted_sum(const std::vector<long>& counts) const {
  KahanSum<Complex> acc;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    acc += roots_[j] * Real(counts[j]);
  }
  return acc.value();
}

long euler_phi(long c) {
  long result = c;
  long m = c;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

long floor_mod(long a, long c) {
  long r = a % c;
  return r < 0 ? r + c : r;
}

long mod_inverse(long a, long c) {
  if (c == 1) return 0;
  long t = 0, new_t = 1;
  long r = c, new_r = floor_mod(a, c);
  while (new_r != 0) {
    long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error("mod_inverse: not a unit");
  return floor_mod(t, c);
}

}  // namespace jacobi
