#include "jacobi/petersson.hpp"

#include "jacobi/eisenstein.hpp"
#include "jacobi/error.hpp"
#include "jacobi/heat_rc.hpp"

#include "json.hpp"

#include <cmath>
#include <thread>

namespace jacobi {

namespace bmp = boost::multiprecision;

std::string to_string(KernelConvention k) { return k == KernelConvention::FourPi ? "4pi" : "2pi"; }

std::string to_string(TheoremConstant c) {
  return c == TheoremConstant::Printed ? "printed" : "corrected";
}

void QuadratureSpec::validate() const {
  if (nu < 8 || nv < 8 || np < 8 || nq < 8) {
    throw ValidationError("quadrature resolutions must be >= 8");
  }
  if (!(v_max >= 2)) throw ValidationError("quadrature requires v_max >= 2");
  if (threads < 1) throw ValidationError("threads must be >= 1");
}

// ----------------------------------------------------------------- quadrature

namespace {

using cd = std::complex<double>;

struct Row {
  long r;
  std::vector<std::pair<double, cd>> terms;  // (n, c(n, r))
};

std::vector<Row> rows_of(const JacobiExpansion& f) {
  std::map<long, Row> rows;
  for (const auto& [key, value] : f.coeffs()) {
    auto& row = rows[key.r[0]];
    row.r = key.r[0];
    row.terms.emplace_back(static_cast<double>(key.n), value.to_complex().to_double());
  }
  std::vector<Row> out;
  for (auto& [r, row] : rows) out.push_back(std::move(row));
  return out;
}

struct Grid {
  int nu, nv, np, nq;
};

class Integrator {
 public:
  Integrator(const JacobiExpansion& f, const JacobiExpansion& g, const QuadratureSpec& spec)
      : a_(rows_of(f)),
        b_(rows_of(g)),
        k_(f.weight()),
        m_(static_cast<double>(f.index().matrix().twice(0, 0)) / 2),
        kappa_(spec.kernel == KernelConvention::FourPi ? 4.0 : 2.0),
        v_max_(spec.v_max),
        threads_(spec.threads) {}

  cd integrate(const Grid& grid) const {
    std::vector<cd> partial(static_cast<std::size_t>(grid.nu));
    auto work = [&](unsigned start) {
      for (int iu = static_cast<int>(start); iu < grid.nu; iu += static_cast<int>(threads_)) {
        partial[static_cast<std::size_t>(iu)] = column(grid, iu);
      }
    };
    if (threads_ <= 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads_; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    cd total = 0;
    for (const auto& p : partial) total += p;  // fixed order
    return 0.5 * total / static_cast<double>(grid.nu);
  }

 private:
  // Integral over (v, p, q) at the iu-th u node.
  cd column(const Grid& grid, int iu) const {
    const double u = -0.5 + (iu + 0.5) / grid.nu;
    const double v_lo = std::sqrt(1.0 - u * u);
    const double hv = (v_max_ - v_lo) / grid.nv;
    std::vector<cd> av(a_.size());
    std::vector<cd> bv(b_.size());
    cd acc = 0;
    for (int iv = 0; iv < grid.nv; ++iv) {
      const double v = v_lo + (iv + 0.5) * hv;
      const double v_pow = std::pow(v, k_ - 2);
      for (int ip = 0; ip < grid.np; ++ip) {
        const double p = -0.5 + (ip + 0.5) / grid.np;
        series(a_, u, v, p, av);
        series(b_, u, v, p, bv);
        cd s = 0;
        for (std::size_t i = 0; i < a_.size(); ++i) {
          for (std::size_t j = 0; j < b_.size(); ++j) {
            // (1/nq) sum_q e((r - r') q) at midpoints: (-1)^t when r - r' = t nq
            const long diff = a_[i].r - b_[j].r;
            if (diff % grid.nq != 0) continue;
            const double sign = ((diff / grid.nq) % 2 == 0) ? 1.0 : -1.0;
            s += sign * av[i] * std::conj(bv[j]);
          }
        }
        acc += s * v_pow * std::exp(-kappa_ * M_PI * m_ * p * p * v) * hv;
      }
    }
    return acc / static_cast<double>(grid.np);
  }

  // sum_n c(n, r) e((n + r p) tau) for every row
  static void series(const std::vector<Row>& rows, double u, double v, double p,
                     std::vector<cd>& out) {
    const double two_pi = 2.0 * M_PI;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      cd s = 0;
      const double rp = static_cast<double>(rows[i].r) * p;
      for (const auto& [n, c] : rows[i].terms) {
        const double e = n + rp;
        s += c * std::exp(cd(-two_pi * e * v, two_pi * e * u));
      }
      out[i] = s;
    }
  }

  std::vector<Row> a_;
  std::vector<Row> b_;
  int k_;
  double m_;
  double kappa_;
  double v_max_;
  unsigned threads_;
};

}  // namespace

QuadratureResult petersson_g1(const JacobiExpansion& f, const JacobiExpansion& g,
                              const QuadratureSpec& spec) {
  spec.validate();
  if (f.genus() != 1 || g.genus() != 1) throw ValidationError("quadrature implemented for g = 1 only");
  if (f.weight() != g.weight() || !(f.index() == g.index())) {
    throw ValidationError("inner product needs equal weight and index");
  }
  if (f.index().is_zero()) throw ValidationError("inner product needs a positive index");
  if (!f.cusp() && !g.cusp()) throw ValidationError("inner product needs a cusp form (divergent otherwise)");
  Integrator integ(f, g, spec);
  const cd fine = integ.integrate({spec.nu, spec.nv, spec.np, spec.nq});
  const cd coarse = integ.integrate({std::max(spec.nu / 2, 1), std::max(spec.nv / 2, 1),
                                     std::max(spec.np / 2, 1), std::max(spec.nq / 2, 1)});
  return {fine, std::abs(fine - coarse)};
}

// ------------------------------------------------------------ closed forms

void check_theorem_hypotheses(int k, const HalfIntMatrix& m, int k1, const HalfIntMatrix& m1,
                              int k2, const HalfIntMatrix& m2, unsigned nu) {
  const int g = m.genus();
  if (m1.genus() != g || m2.genus() != g) throw ValidationError("genus mismatch");
  if (k != k1 + k2 + 2 * static_cast<int>(nu)) {
    throw ValidationError("requires k = k1 + k2 + 2 nu (k = " + std::to_string(k) + ")");
  }
  if (!(m == m1 + m2)) throw ValidationError("requires M = M1 + M2");
  if (k1 <= g + 2) throw ValidationError("requires k1 > g+2 (k1 = " + std::to_string(k1) + ")");
  if (k2 <= k1 + g + 2) {
    throw ValidationError("requires k2 > k1+g+2 (k2 = " + std::to_string(k2) + ")");
  }
}

namespace {

Real nu_factorial(unsigned nu) {
  Real f = 1;
  for (unsigned i = 2; i <= nu; ++i) f *= i;
  return f;
}

// nu! k2'! / (k2'+nu)!, k2' = k2 - g/2 - 1
Real factorial_ratio(int k2, int g, unsigned nu) {
  return nu_factorial(nu) * gamma_half(HalfInt{2 * k2 - g}) /
         gamma_half(HalfInt{2 * k2 - g + 2 * static_cast<int>(nu)});
}

}  // namespace

Real prop_constant(int k2, const HalfIntMatrix& m2, unsigned nu, TheoremConstant which) {
  const int g = m2.genus();
  const Real printed = bmp::pow(2 * real_pi(), -2 * static_cast<int>(nu)) *
                       bmp::pow(to_real(m2.det()), -static_cast<int>(nu)) *
                       factorial_ratio(k2, g, nu);
  return which == TheoremConstant::Printed ? printed : Real(1 / (2 * printed));
}

Real theorem_constant_printed(int k, const HalfIntMatrix& m, int k2, const HalfIntMatrix& m2,
                              unsigned nu) {
  const int g = m.genus();
  const HalfInt kp{2 * k - g - 2};
  const Real kpr = kp.to_real();
  const int two_nu = 2 * static_cast<int>(nu);
  return bmp::pow(Real(2), kpr * (g - 1) - g - two_nu) * bmp::pow(real_pi(), -kpr - two_nu) *
         bmp::pow(to_real(m.det()), kpr - Real(1) / 2) *
         bmp::pow(to_real(m2.det()), -static_cast<int>(nu)) * gamma_half(kp) *
         factorial_ratio(k2, g, nu);
}

namespace {

enum class Leg { Prop, Theorem };

AnalyticValue closed_form(const JacobiExpansion& f, const JacobiExpansion& g, int k2,
                          const HalfIntMatrix& m2, unsigned nu, long n_max, TheoremConstant which,
                          Leg leg) {
  const HalfIntMatrix& m = f.index().matrix();
  const HalfIntMatrix& m1 = g.index().matrix();
  check_theorem_hypotheses(f.weight(), m, g.weight(), m1, k2, m2, nu);
  const int k = f.weight();
  const int gen = m.genus();
  const HalfInt kp{2 * k - gen - 2};
  const long limit = std::min({n_max < 0 ? f.n_max() : n_max, f.n_max(), g.n_max()});
  AnalyticValue out;
  KahanSum<Complex> acc;
  Real last_shell = 0;
  for (const auto& [key, b] : g.coeffs()) {
    if (key.n > limit) break;
    const Rational d1 = 4 * key.n * m1.det() - adjugate_form(m1, key.r);
    if (nu > 0 && d1 == 0) continue;
    const Rational dm = 4 * key.n * m.det() - adjugate_form(m, key.r);
    if (dm <= 0) {
      ++out.excluded;
      continue;
    }
    const Scalar a = f.coeff(key.n, key.r);
    if (a.is_zero()) continue;
    Rational d1_pow = 1;
    for (unsigned i = 0; i < nu; ++i) d1_pow *= d1;
    const Rational big_d = support_point(m, key.n, key.r).big_d;
    Complex term = a.to_complex() * b.to_complex().conj() * to_real(d1_pow);
    if (leg == Leg::Prop) {
      term *= lambda_const(k, m, big_d);
    } else {
      term *= bmp::pow(to_real(big_d), -kp.to_real());
    }
    acc += term;
    ++out.terms;
    if (key.n == limit) last_shell += term.abs();
  }
  Real scale;
  if (leg == Leg::Prop) {
    scale = prop_constant(k2, m2, nu, which);
  } else {
    scale = theorem_constant_printed(k, m, k2, m2, nu);
    if (which == TheoremConstant::Corrected) {
      scale *= prop_constant(k2, m2, nu, TheoremConstant::Corrected) /
               prop_constant(k2, m2, nu, TheoremConstant::Printed);
    }
  }
  out.value = acc.value() * scale;
  // Terms decay like n^{-(k2-k1)/2}; majorant sum from the last shell.
  const double q = (k2 - g.weight()) / 2.0;
  const double shell = (last_shell * bmp::abs(scale)).convert_to<double>();
  out.tail_bound = q > 1 ? shell * static_cast<double>(limit) / (q - 1)
                         : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace

AnalyticValue prop_represent_value(const JacobiExpansion& f, const JacobiExpansion& g, int k2,
                                   const HalfIntMatrix& m2, unsigned nu, long n_max,
                                   TheoremConstant which) {
  return closed_form(f, g, k2, m2, nu, n_max, which, Leg::Prop);
}

AnalyticValue theorem_rhs(const JacobiExpansion& f, const JacobiExpansion& g, int k2,
                          const HalfIntMatrix& m2, unsigned nu, long n_max,
                          TheoremConstant which) {
  return closed_form(f, g, k2, m2, nu, n_max, which, Leg::Theorem);
}

// ---------------------------------------------------------------- verification

namespace {

double rel_err(std::complex<double> x, std::complex<double> ref) {
  const double d = std::abs(ref);
  return d == 0 ? std::abs(x) : std::abs(x - ref) / d;
}

nlohmann::ordered_json complex_json(std::complex<double> z) {
  return {{"re", z.real()}, {"im", z.imag()}};
}

}  // namespace

VerificationReport verify_theorem(const JacobiExpansion& f, const JacobiExpansion& g, int k2,
                                  const HalfIntMatrix& m2, unsigned nu, const VerifyOptions& opt) {
  PrecisionScope scope(opt.precision_bits);
  VerificationReport rep;
  rep.options = opt;
  rep.nu = nu;
  check_theorem_hypotheses(f.weight(), f.index().matrix(), g.weight(), g.index().matrix(), k2, m2,
                           nu);
  if (!f.cusp()) throw ValidationError("F must be a cusp form");
  rep.n_max = std::min({opt.n_max < 0 ? f.n_max() : opt.n_max, f.n_max(), g.n_max()});

  const AnalyticValue b = prop_represent_value(f, g, k2, m2, nu, rep.n_max);
  const AnalyticValue c = theorem_rhs(f, g, k2, m2, nu, rep.n_max);
  const AnalyticValue c_corr = theorem_rhs(f, g, k2, m2, nu, rep.n_max, TheoremConstant::Corrected);
  rep.poincare_rep = b.value.to_double();
  rep.theorem_rhs = c.value.to_double();
  rep.theorem_rhs_corrected = c_corr.value.to_double();
  rep.theorem_tail = c.tail_bound;
  rep.terms = c.terms;
  rep.excluded = c.excluded;
  {
    // relative difference at full precision, not after rounding to double
    const Real denom = c.value.abs();
    rep.rel_b_c = (denom == 0 ? (b.value - c.value).abs() : (b.value - c.value).abs() / denom)
                      .convert_to<double>();
  }

  try {
    if (f.genus() != 1) throw ValidationError("quadrature leg needs g = 1");
    EisensteinParams ep;
    ep.k = k2;
    ep.m = m2;
    ep.c_max = opt.c_max;
    ep.precision_bits = opt.precision_bits;
    const JacobiExpansion e = eisenstein_expansion(ep, rep.n_max);
    const JacobiExpansion bracket = rc_bracket(g, e, nu);
    JacobiExpansion f_trunc(f.weight(), f.index(), rep.n_max, true, f.mode());
    for (const auto& [key, value] : f.coeffs()) {
      if (key.n <= rep.n_max) f_trunc.set(key.n, key.r, value);
    }
    const QuadratureResult q = petersson_g1(f_trunc, bracket, opt.quadrature);
    // <F, (2 pi i)^{2nu} B> = conj((-4 pi^2)^nu) <F, B>
    const double factor = std::pow(-4.0 * M_PI * M_PI, static_cast<double>(nu));
    rep.quadrature = factor * q.value;
    rep.quadrature_error = std::abs(factor) * q.error;
    rep.rel_a_c = rel_err(rep.quadrature, rep.theorem_rhs);
    rep.rel_a_b = rel_err(rep.quadrature, rep.poincare_rep);
    rep.rel_a_c_corrected = rel_err(rep.quadrature, rep.theorem_rhs_corrected);
  } catch (const std::exception& e) {
    rep.failed_legs.push_back(std::string("quadrature: ") + e.what());
    rep.rel_a_c = rep.rel_a_b = rep.rel_a_c_corrected = std::numeric_limits<double>::infinity();
  }
  return rep;
}

std::string VerificationReport::to_json() const {
  using nlohmann::ordered_json;
  const auto& qs = options.quadrature;
  ordered_json j;
  j["quadrature"] = {{"value", complex_json(quadrature)},
                     {"error_estimate", quadrature_error},
                     {"grid", {qs.nu, qs.nv, qs.np, qs.nq}},
                     {"v_max", qs.v_max}};
  j["poincare_rep"] = {{"value", complex_json(poincare_rep)}, {"constant", "printed"}};
  j["theorem_rhs"] = {{"value", complex_json(theorem_rhs)},
                      {"tail_bound", theorem_tail},
                      {"terms", terms},
                      {"excluded_points", excluded},
                      {"corrected_constant_value", complex_json(theorem_rhs_corrected)}};
  j["rel_errors"] = {
      {"b_vs_c", {{"value", rel_b_c}, {"tolerance", options.tol_algebra}, {"pass", algebra_ok()}}},
      {"a_vs_c",
       {{"value", rel_a_c}, {"tolerance", options.tol_quadrature}, {"pass", rel_a_c < options.tol_quadrature}}},
      {"a_vs_b",
       {{"value", rel_a_b},
        {"tolerance", options.tol_quadrature},
        {"pass", rel_a_b < options.tol_quadrature}}},
      {"a_vs_c_corrected_constant",
       {{"value", rel_a_c_corrected},
        {"tolerance", options.tol_quadrature},
        {"pass", rel_a_c_corrected < options.tol_quadrature}}}};
  j["flags"] = {{"measure_flag", to_string(qs.kernel)},
                {"theorem_constant", to_string(options.gate)},
                {"nu", nu},
                {"n_max", n_max},
                {"c_max", options.c_max},
                {"precision_bits", options.precision_bits},
                {"threads", qs.threads}};
  j["failed_legs"] = failed_legs;
  return j.dump(2) + "\n";
}

}  // namespace jacobi
