#include "jacobi/poincare.hpp"

#include "jacobi/error.hpp"

#include <cmath>
#include <numeric>

namespace jacobi {

namespace bmp = boost::multiprecision;

void check_poincare_params(const PoincareParams& p) {
  const int g = p.m.genus();
  if (p.k <= g + 2) {
    throw ValidationError("requires k > g+2 (k = " + std::to_string(p.k) +
                          ", g = " + std::to_string(g) + ")");
  }
  if (static_cast<int>(p.r.size()) != g) throw ValidationError("base r has wrong length");
  if (4 * p.n * p.m.det() - adjugate_form(p.m, p.r) <= 0) {
    throw ValidationError("base point requires 4n > M^{-1}[r]");
  }
  if (p.c_max < 0) throw ValidationError("c_max must be non-negative");
}

Real lambda_const(int k, const HalfIntMatrix& m, const Rational& big_d) {
  if (big_d <= 0) throw ValidationError("lambda_const requires D > 0");
  const int g = m.genus();
  const HalfInt kp{2 * k - g - 2};  // k - g/2 - 1
  if (kp.twice <= 0) throw ValidationError("lambda_const requires k > g/2 + 1");
  const Real kp_real = kp.to_real();
  const Real two_exp = Real(g - 1) * kp_real - g;
  const Real det_exp = Real(2 * k - g - 3) / 2;
  return bmp::pow(Real(2), two_exp) * gamma_half(kp) * bmp::pow(real_pi(), -kp_real) *
         bmp::pow(to_real(m.det()), det_exp) * bmp::pow(to_real(big_d), -kp_real);
}

int delta_term(const HalfIntMatrix& m, long n, const IntVector& r, long n2, const IntVector& r2) {
  if (support_point(m, n, r).big_d != support_point(m, n2, r2).big_d) return 0;
  IntVector diff(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) diff[i] = r2[i] - r[i];
  return in_index_lattice(m, diff) ? 1 : 0;
}

namespace {

struct ModTables {
  RootTable roots;
  std::vector<std::pair<long, long>> units;  // (y, y^{-1})

  explicit ModTables(long c) : roots(c) {
    for (long y = 0; y < c; ++y) {
      if (std::gcd(y, c) == 1) units.emplace_back(y, mod_inverse(y, c));
    }
  }
};

Complex kloosterman_with(const HalfIntMatrix& m, long c, long n, const IntVector& r, long n2,
                         const IntVector& r2, HmcConvention conv, const ModTables& t) {
  const int g = m.genus();
  std::vector<long> counts(static_cast<std::size_t>(c), 0);
  std::size_t total = 1;
  for (int i = 0; i < g; ++i) total *= static_cast<std::size_t>(c);
  IntVector x(g, 0);
  const long n2_mod = floor_mod(n2, c);
  for (std::size_t idx = 0; idx < total; ++idx) {
    long a = floor_mod(n, c);  // M[x] + r.x + n
    long b = 0;                // r'.x
    for (int i = 0; i < g; ++i) {
      a += (m.twice(i, i) / 2) % c * (x[i] * x[i] % c) + floor_mod(r[i], c) * x[i];
      for (int j = i + 1; j < g; ++j) a += floor_mod(m.twice(i, j), c) * (x[i] * x[j] % c);
      b += floor_mod(r2[i], c) * x[i];
      a %= c;
      b %= c;
    }
    for (const auto& [y, y_inv] : t.units) {
      ++counts[static_cast<std::size_t>((a * y_inv + n2_mod * y + b) % c)];
    }
    for (int i = g - 1; i >= 0; --i) {
      if (++x[i] < c) break;
      x[i] = 0;
    }
  }
  Complex s = t.roots.weighted_sum(counts);
  const Rational pairing =
      inverse_bilinear(m, r2, conv == HmcConvention::BaseR ? r : r2);
  s *= root_of_unity(pairing, 2 * c);
  s *= bmp::pow(Real(c), Real(-(g + 2)) / 2);
  return s;
}

class PoincareEngine {
 public:
  explicit PoincareEngine(const PoincareParams& p) : p_(p) {
    check_poincare_params(p);
    for (long c = 1; c <= p.c_max; ++c) tables_.emplace_back(c);
    base_d_ = support_point(p.m, p.n, p.r).big_d;
  }

  // g(n', r'); tail bound on the neglected c > c_max part.
  CoeffEstimate half(long n2, const IntVector& r2) const {
    const int g = p_.m.genus();
    const HalfInt order{2 * p_.k - g - 2};
    const Real nu = order.to_real();
    const Rational d2 = support_point(p_.m, n2, r2).big_d;
    CoeffEstimate out;
    out.value = Complex(Real(delta_term(p_.m, p_.n, p_.r, n2, r2)));
    const Real det = to_real(p_.m.det());
    Complex pre = i_power(-p_.k);
    pre *= real_pi() * bmp::pow(Real(2), Real(2 - g) / 2) / bmp::sqrt(det) *
           bmp::pow(to_real(Rational(d2 / base_d_)), Real(2 * p_.k - g - 2) / 4);
    // Bessel argument pi sqrt(D D') / (2^{g-1} |M| c)
    const Real x_scale =
        real_pi() * bmp::sqrt(to_real(Rational(base_d_ * d2))) / (bmp::pow(Real(2), g - 1) * det);
    KahanSum<Complex> series;
    for (long c = 1; c <= p_.c_max; ++c) {
      const Complex h = kloosterman_with(p_.m, c, p_.n, p_.r, n2, r2, p_.convention,
                                         tables_[static_cast<std::size_t>(c - 1)]);
      series += h * bessel_j(order, x_scale / c);
    }
    out.value += pre * series.value();
    // |J_nu(x)| <= (x/2)^nu / Gamma(nu+1), |H_c| <= c^{g/2}
    const double xs = x_scale.convert_to<double>();
    const double nud = nu.convert_to<double>();
    const double lead = std::exp(nud * std::log(xs / 2) - std::lgamma(nud + 1));
    const double expo = nud - g / 2.0 - 1;  // > 0 when k > g + 2
    const double c_eff = static_cast<double>(std::max<long>(p_.c_max, 1));
    double tail = lead * std::pow(c_eff, -expo) / expo;
    if (p_.c_max == 0) tail += lead;
    out.tail_bound = pre.abs().convert_to<double>() * tail;
    return out;
  }

  CoeffEstimate coeff(long n2, const IntVector& r2) const {
    const int g = p_.m.genus();
    if (static_cast<int>(r2.size()) != g) throw ValidationError("r' has wrong length");
    if (4 * n2 * p_.m.det() - adjugate_form(p_.m, r2) <= 0) {
      throw ValidationError("poincare_coeff requires 4n' > M^{-1}[r']");
    }
    IntVector neg(r2.size());
    for (std::size_t i = 0; i < r2.size(); ++i) neg[i] = -r2[i];
    CoeffEstimate plus = half(n2, r2);
    CoeffEstimate minus = half(n2, neg);
    CoeffEstimate out;
    out.value = plus.value;
    if (p_.k % 2 == 0) {
      out.value += minus.value;
    } else {
      out.value -= minus.value;
    }
    out.tail_bound = plus.tail_bound + minus.tail_bound;
    return out;
  }

 private:
  const PoincareParams& p_;
  std::vector<ModTables> tables_;
  Rational base_d_;
};

}  // namespace

Complex kloosterman_H(const HalfIntMatrix& m, long c, long n, const IntVector& r, long n2,
                      const IntVector& r2, HmcConvention conv) {
  if (c < 1) throw ValidationError("kloosterman_H: c must be positive");
  if (static_cast<int>(r.size()) != m.genus() || static_cast<int>(r2.size()) != m.genus()) {
    throw ValidationError("vector has wrong length");
  }
  return kloosterman_with(m, c, n, r, n2, r2, conv, ModTables(c));
}

CoeffEstimate poincare_coeff(const PoincareParams& p, long n2, const IntVector& r2) {
  PrecisionScope scope(p.precision_bits);
  PoincareEngine engine(p);
  return engine.coeff(n2, r2);
}

JacobiExpansion poincare_expansion(const PoincareParams& p, long n_max, double* max_tail) {
  PrecisionScope scope(p.precision_bits);
  PoincareEngine engine(p);
  JacobiExpansion out(p.k, JacobiIndex(p.m), n_max, true, ScalarMode::ComplexFloat);
  std::map<std::pair<Rational, std::vector<Rational>>, Complex> cache;
  double worst = 0;
  for (const auto& pt : enumerate_support(p.m, n_max, true)) {
    // class invariance is only a property of the BaseR convention
    auto key = std::make_pair(pt.big_d, p.convention == HmcConvention::BaseR
                                            ? lattice_class(p.m, pt.r)
                                            : std::vector<Rational>(pt.r.begin(), pt.r.end()));
    auto it = cache.find(key);
    if (it == cache.end()) {
      CoeffEstimate e = engine.coeff(pt.n, pt.r);
      worst = std::max(worst, e.tail_bound);
      it = cache.emplace(std::move(key), std::move(e.value)).first;
    }
    out.set(pt.n, pt.r, Scalar(it->second));
  }
  if (max_tail) *max_tail = worst;
  return out;
}

}  // namespace jacobi
