#include "jacobi/heat_rc.hpp"

#include "jacobi/error.hpp"
#include "jacobi/special.hpp"

#include <memory>

namespace jacobi {

namespace {

Rational rational_pow(const Rational& base, unsigned e) {
  Rational out = 1;
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

Rational factorial(unsigned n) {
  Rational f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

JacobiExpansion heat_apply(const JacobiExpansion& f, unsigned times) {
  JacobiExpansion out(f.weight() + 2 * static_cast<int>(times), f.index(), f.n_max(),
                      f.cusp() || times > 0, f.mode());
  out.set_nu_power(f.nu_power() + static_cast<int>(times));
  for (const auto& [key, value] : f.coeffs()) {
    const Rational d = f.index().disc(key.n, key.r);
    if (times > 0 && d == 0) continue;
    out.set(key.n, key.r, value * Scalar(rational_pow(d, times)));
  }
  return out;
}

SplitWeight rc_split_weight(int k1, const JacobiIndex& m1, int k2, const JacobiIndex& m2,
                            unsigned nu) {
  const int g = m1.genus();
  // binomial tops k_j - g/2 + nu - 1, exact for odd g
  const Rational top1 = HalfInt{2 * k1 - g + 2 * static_cast<long>(nu) - 2}.to_rational();
  const Rational top2 = HalfInt{2 * k2 - g + 2 * static_cast<long>(nu) - 2}.to_rational();
  auto coef = std::make_shared<std::vector<Rational>>();
  for (unsigned l = 0; l <= nu; ++l) {
    Rational c = gen_binom(top1, nu - l) * gen_binom(top2, l) * rational_pow(m1.det(), nu - l) *
                 rational_pow(m2.det(), l);
    if (l % 2 == 1) c = -c;
    c.canonicalize();
    coef->push_back(c);
  }
  return [coef, m1, m2, nu](const FourierIndex& a, const FourierIndex& b) {
    if (nu == 0) return (*coef)[0];
    const Rational d1 = m1.disc(a.n, a.r);
    const Rational d2 = m2.disc(b.n, b.r);
    Rational w = 0;
    for (unsigned l = 0; l <= nu; ++l) {
      if ((*coef)[l] == 0) continue;
      w += (*coef)[l] * rational_pow(d1, l) * rational_pow(d2, nu - l);
    }
    w.canonicalize();
    return w;
  };
}

JacobiExpansion rc_bracket(const JacobiExpansion& f, const JacobiExpansion& g, unsigned nu) {
  if (f.genus() != g.genus()) throw ValidationError("bracket: genus mismatch");
  JacobiExpansion out =
      convolve(f, g, rc_split_weight(f.weight(), f.index(), g.weight(), g.index(), nu));
  out.set_weight(f.weight() + g.weight() + 2 * static_cast<int>(nu));
  out.set_nu_power(f.nu_power() + g.nu_power() + static_cast<int>(nu));
  if (nu > 0) {
    for (const auto& [key, value] : out.coeffs()) {
      if (out.index().disc(key.n, key.r) == 0 && !value.is_zero()) {
        throw NumericalFailure("bracket: boundary coefficient nonvanishing at n = " +
                               std::to_string(key.n));
      }
    }
    out.set_cusp(true);
  }
  return out;
}

Rational vanishing_sum(unsigned nu, unsigned u, unsigned v) {
  Rational s = 0;
  if (u + v > nu) return s;
  for (unsigned l = u; l <= nu - v; ++l) {
    Rational term = 1 / (factorial(l - u) * factorial(nu - v - l));
    if (l % 2 == 1) term = -term;
    s += term;
  }
  s.canonicalize();
  return s;
}

JacobiExpansion cusp_part(const JacobiExpansion& f, double tol) {
  JacobiExpansion out(f.weight(), f.index(), f.n_max(), true, f.mode());
  out.set_nu_power(f.nu_power());
  for (const auto& [key, value] : f.coeffs()) {
    if (f.index().disc(key.n, key.r) == 0) {
      if (value.to_complex().abs() > tol) {
        throw NumericalFailure("boundary coefficient at n = " + std::to_string(key.n) +
                               " exceeds the cusp tolerance");
      }
      continue;
    }
    out.set(key.n, key.r, value);
  }
  return out;
}

}  // namespace jacobi
