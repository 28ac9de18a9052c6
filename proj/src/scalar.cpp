#include "jacobi/scalar.hpp"

#include <mpfr.h>

#include <cmath>
#include <stdexcept>

namespace jacobi {

namespace {

thread_local unsigned g_precision_bits = kDefaultPrecisionBits;

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

struct PrecisionInit {
  PrecisionInit() { Real::default_precision(bits_to_digits10(kDefaultPrecisionBits)); }
};
const PrecisionInit g_precision_init;

}  // namespace

unsigned current_precision_bits() { return g_precision_bits; }

PrecisionScope::PrecisionScope(unsigned bits)
    : saved_bits_(g_precision_bits), saved_digits_(Real::default_precision()) {
  if (bits < 24) throw std::invalid_argument("precision must be at least 24 bits");
  g_precision_bits = bits;
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() {
  g_precision_bits = saved_bits_;
  Real::default_precision(saved_digits_);
}

Real real_pi() {
  Real p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

Real to_real(const Integer& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real parse_real(const std::string& text) {
  Real r;
  if (mpfr_set_str(r.backend().data(), text.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a decimal number: '" + text + "'");
  }
  return r;
}

std::string format_real(const Real& x) {
  if (x == 0) return "0";
  return x.str(static_cast<std::streamsize>(bits_to_digits10(g_precision_bits)),
               std::ios_base::scientific);
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  Rational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: '" + text + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------- Complex

Complex Complex::polar_unit(const Real& angle) {
  return {boost::multiprecision::cos(angle), boost::multiprecision::sin(angle)};
}

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator*=(const Real& s) {
  re *= s;
  im *= s;
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  Real d = o.norm();
  if (d == 0) throw std::domain_error("complex division by zero");
  Real r = (re * o.re + im * o.im) / d;
  im = (im * o.re - re * o.im) / d;
  re = std::move(r);
  return *this;
}

Real Complex::abs() const { return boost::multiprecision::sqrt(norm()); }

std::complex<double> Complex::to_double() const {
  return {re.convert_to<double>(), im.convert_to<double>()};
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator*(Complex a, const Real& s) { return a *= s; }
Complex operator*(const Real& s, Complex a) { return a *= s; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }
bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

Complex exp(const Complex& z) {
  return boost::multiprecision::exp(z.re) * Complex::polar_unit(z.im);
}

Complex pow(const Complex& z, const Real& p) {
  if (z.is_zero()) {
    if (p > 0) return {};
    throw std::domain_error("zero raised to a non-positive power");
  }
  Real modulus = boost::multiprecision::pow(z.abs(), p);
  Real arg = boost::multiprecision::atan2(z.im, z.re);
  return modulus * Complex::polar_unit(arg * p);
}

Complex i_power(long e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {Real(1), Real(0)};
    case 1: return {Real(0), Real(1)};
    case 2: return {Real(-1), Real(0)};
    default: return {Real(0), Real(-1)};
  }
}

// ----------------------------------------------------------------- Scalar

Complex Scalar::to_complex() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return Complex(to_real(*q));
  return std::get<Complex>(value_);
}

bool Scalar::is_zero() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q == 0;
  return std::get<Complex>(value_).is_zero();
}

Scalar Scalar::conj() const {
  if (is_rational()) return *this;
  return Scalar(std::get<Complex>(value_).conj());
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_rational() && o.is_rational()) {
    std::get<Rational>(value_) += o.rational();
  } else {
    value_ = to_complex() + o.to_complex();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_rational() && o.is_rational()) {
    std::get<Rational>(value_) -= o.rational();
  } else {
    value_ = to_complex() - o.to_complex();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_rational() && o.is_rational()) {
    std::get<Rational>(value_) *= o.rational();
  } else if (o.is_rational()) {
    std::get<Complex>(value_) *= to_real(o.rational());
  } else if (is_rational()) {
    value_ = to_real(rational()) * std::get<Complex>(o.value_);
  } else {
    std::get<Complex>(value_) *= std::get<Complex>(o.value_);
  }
  return *this;
}

Scalar operator-(const Scalar& a) {
  if (a.is_rational()) return Scalar(Rational(-a.rational()));
  return Scalar(-std::get<Complex>(a.value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return a.rational() == b.rational();
  return a.to_complex() == b.to_complex();
}

}  // namespace jacobi
