#include "jacobi/eisenstein.hpp"

#include "jacobi/error.hpp"

#include <cmath>
#include <numeric>

namespace jacobi {

namespace bmp = boost::multiprecision;

void check_eisenstein_params(int k, const HalfIntMatrix& m) {
  const int g = m.genus();
  if (g % 2 == 0) {
    throw ValidationError("unsupported: cosecant pole (even genus g = " + std::to_string(g) + ")");
  }
  if (k <= g + 2) {
    throw ValidationError("requires k > g+2 (k = " + std::to_string(k) +
                          ", g = " + std::to_string(g) + ")");
  }
}

Complex printed_alpha(int k, int g) {
  if (g % 2 == 0) throw ValidationError("unsupported: cosecant pole");
  const HalfInt s{2 * k - g};
  // csc(pi s) = (-1)^{s - 1/2} for half-integral s
  const long j = (s.twice - 1) / 2;
  const Real csc = (j % 2 == 0) ? Real(1) : Real(-1);
  Complex a = pow(Complex(Real(0), Real(2)), Real(-g) / 2);
  return a * (real_pi() * csc / gamma_half(s));
}

Complex archimedean_gamma(int k, const HalfIntMatrix& m, long n, const IntVector& r,
                          GammaNormalization norm) {
  const int g = m.genus();
  if (g % 2 == 0) throw ValidationError("unsupported: cosecant pole");
  const Rational disc = 4 * n * m.det() - adjugate_form(m, r);
  if (disc <= 0) return Complex();
  const HalfInt s{2 * k - g};
  const Real s_real = s.to_real();
  const Real det_root = bmp::sqrt(to_real(m.det()));
  const Real ratio = to_real(Rational(disc / (4 * m.det())));
  const Real two_pi = 2 * real_pi();
  if (norm == GammaNormalization::Printed) {
    Complex base(Real(0), two_pi * ratio);
    return printed_alpha(k, g) * pow(base, s_real - 1) * (1 / det_root);
  }
  Complex out = pow(Complex(Real(0), Real(2)), Real(-g) / 2);
  out *= pow(Complex(Real(0), -two_pi), s_real);
  out *= bmp::pow(ratio, s_real - 1) / (det_root * gamma_half(s));
  return out;
}

long singular_term(const HalfIntMatrix& m, long n, const IntVector& r) {
  if (!in_index_lattice(m, r)) return 0;
  // lambda = (2M)^{-1} r^t, integral here
  const int g = m.genus();
  std::vector<Rational> lam(g);
  for (int i = 0; i < g; ++i) {
    Rational s = 0;
    for (int j = 0; j < g; ++j) s += m.adjugate()[i][j] * r[j];
    s /= 2 * m.det();
    s.canonicalize();
    lam[i] = s;
  }
  return quad_form(m, lam) == n ? 1 : 0;
}

namespace {

// Integer M[lambda] mod c and r.lambda mod c for every lambda in [0, c)^g,
// folded into exponent counts for one unit d.
class LambdaGrid {
 public:
  LambdaGrid(const HalfIntMatrix& m, long c, const IntVector& r) {
    const int g = m.genus();
    std::size_t total = 1;
    for (int i = 0; i < g; ++i) total *= static_cast<std::size_t>(c);
    quad_.reserve(total);
    lin_.reserve(total);
    IntVector lam(g, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      long q = 0;
      long l = 0;
      for (int i = 0; i < g; ++i) {
        q += (m.twice(i, i) / 2) % c * (lam[i] * lam[i] % c);
        for (int j = i + 1; j < g; ++j) q += floor_mod(m.twice(i, j), c) * (lam[i] * lam[j] % c);
        l += floor_mod(r[i], c) * lam[i];
        q %= c;
        l %= c;
      }
      quad_.push_back(q);
      lin_.push_back(l);
      for (int i = g - 1; i >= 0; --i) {
        if (++lam[i] < c) break;
        lam[i] = 0;
      }
    }
  }

  void accumulate(long c, long a, long shift, std::vector<long>& counts) const {
    for (std::size_t i = 0; i < quad_.size(); ++i) {
      ++counts[static_cast<std::size_t>(floor_mod(a * quad_[i] + shift - lin_[i], c))];
    }
  }

 private:
  std::vector<long> quad_;
  std::vector<long> lin_;
};

std::vector<std::pair<long, long>> units_mod(long c) {
  std::vector<std::pair<long, long>> out;
  for (long d = 0; d < c; ++d) {
    if (std::gcd(d, c) == 1) out.emplace_back(d, mod_inverse(d, c));
  }
  return out;
}

Complex gauss_sum_with(const HalfIntMatrix& m, long c, long n, const IntVector& r,
                       const RootTable& roots, const std::vector<std::pair<long, long>>& units) {
  LambdaGrid grid(m, c, r);
  std::vector<long> counts(static_cast<std::size_t>(c), 0);
  const long n_mod = floor_mod(n, c);
  for (const auto& [d, a] : units) grid.accumulate(c, a, n_mod * d % c, counts);
  return roots.weighted_sum(counts);
}

}  // namespace

Complex gauss_sum(const HalfIntMatrix& m, long c, long n, const IntVector& r) {
  if (c < 1) throw ValidationError("gauss_sum: c must be positive");
  if (static_cast<int>(r.size()) != m.genus()) throw ValidationError("r has wrong length");
  return gauss_sum_with(m, c, n, r, RootTable(c), units_mod(c));
}

GaussSumTable::GaussSumTable(HalfIntMatrix m, long c_max) : m_(std::move(m)) {
  if (c_max < 0) throw ValidationError("c_max must be non-negative");
  for (long c = 1; c <= c_max; ++c) {
    roots_.emplace_back(c);
    units_.push_back(units_mod(c));
  }
}

Complex GaussSumTable::operator()(long c, long n, const IntVector& r) const {
  if (c < 1 || c > c_max()) throw ValidationError("GaussSumTable: modulus out of range");
  const auto i = static_cast<std::size_t>(c - 1);
  return gauss_sum_with(m_, c, n, r, roots_[i], units_[i]);
}

CoeffEstimate eis_coeff(const EisensteinParams& p, const GaussSumTable& table, long n,
                        const IntVector& r) {
  check_eisenstein_params(p.k, p.m);
  if (p.c_max > table.c_max()) throw ValidationError("Gauss-sum table shorter than c_max");
  const Rational disc = 4 * n * p.m.det() - adjugate_form(p.m, r);
  if (n < 0 || disc < 0) throw ValidationError("eis_coeff requires 4n >= M^{-1}[r]");
  PrecisionScope scope(p.precision_bits);
  CoeffEstimate out;
  out.value = Complex(Real(singular_term(p.m, n, r)));
  if (disc == 0) return out;
  KahanSum<Complex> series;
  for (long c = 1; c <= p.c_max; ++c) {
    const Real weight = bmp::pow(Real(c), -p.k);
    series += table(c, n, r) * weight;
  }
  const Complex gamma = archimedean_gamma(p.k, p.m, n, r, p.normalization);
  out.value += gamma * series.value();
  // sum_{c > C} c^{-k} phi(c) c^g <= C^{g+2-k} / (k-g-2)
  const int g = p.m.genus();
  const double c_eff = static_cast<double>(std::max<long>(p.c_max, 1));
  out.tail_bound = gamma.abs().convert_to<double>() * std::pow(c_eff, g + 2 - p.k) / (p.k - g - 2);
  return out;
}

CoeffEstimate eis_coeff(const EisensteinParams& p, long n, const IntVector& r) {
  check_eisenstein_params(p.k, p.m);
  PrecisionScope scope(p.precision_bits);
  GaussSumTable table(p.m, p.c_max);
  return eis_coeff(p, table, n, r);
}

JacobiExpansion eisenstein_expansion(const EisensteinParams& p, long n_max, double* max_tail) {
  check_eisenstein_params(p.k, p.m);
  PrecisionScope scope(p.precision_bits);
  GaussSumTable table(p.m, p.c_max);
  JacobiExpansion out(p.k, JacobiIndex(p.m), n_max, false, ScalarMode::ComplexFloat);
  std::map<std::pair<Rational, std::vector<Rational>>, Complex> cache;
  double worst = 0;
  for (const auto& pt : enumerate_support(p.m, n_max, false)) {
    auto key = std::make_pair(pt.disc, lattice_class(p.m, pt.r));
    auto it = cache.find(key);
    if (it == cache.end()) {
      CoeffEstimate e = eis_coeff(p, table, pt.n, pt.r);
      worst = std::max(worst, e.tail_bound);
      it = cache.emplace(std::move(key), std::move(e.value)).first;
    }
    out.set(pt.n, pt.r, Scalar(it->second));
  }
  if (max_tail) *max_tail = worst;
  return out;
}

}  // namespace jacobi
