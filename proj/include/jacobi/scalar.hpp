#pragma once

// Scalar layer shared by every module: exact rationals (GMP) for the
// algebraic parts, MPFR-backed reals and a small complex type for the
// analytic series.

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <string>
#include <variant>

namespace jacobi {

using Integer = mpz_class;
using Rational = mpq_class;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Binary precision that new Reals are created with on this thread.
unsigned current_precision_bits();

/// RAII switch of the working precision; restores the previous one on exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_bits_;
  unsigned saved_digits_;
};

Real real_pi();
Real to_real(const Rational& q);
Real to_real(const Integer& z);
Real parse_real(const std::string& text);
/// Shortest decimal string that round-trips at the current precision.
std::string format_real(const Real& x);

/// Fully reduced rational from "p/q" or "p"; throws std::invalid_argument.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT: implicit promotion
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  static Complex polar_unit(const Real& angle);  // e^{i angle}

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator*=(const Real& s);
  Complex& operator/=(const Complex& o);

  [[nodiscard]] Complex conj() const { return {re, -im}; }
  [[nodiscard]] Real norm() const { return re * re + im * im; }
  [[nodiscard]] Real abs() const;
  [[nodiscard]] bool is_zero() const { return re == 0 && im == 0; }
  [[nodiscard]] std::complex<double> to_double() const;
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(Complex a, const Complex& b);
Complex operator*(Complex a, const Real& s);
Complex operator*(const Real& s, Complex a);
Complex operator/(Complex a, const Complex& b);
bool operator==(const Complex& a, const Complex& b);

Complex exp(const Complex& z);
/// Principal branch z^p for real p (arg in (-pi, pi]).
Complex pow(const Complex& z, const Real& p);
Complex i_power(long e);  // i^e, exact

/// Half-integer q stored as 2q.
struct HalfInt {
  long twice = 0;

  static HalfInt from_int(long v) { return HalfInt{2 * v}; }
  [[nodiscard]] bool is_integer() const { return twice % 2 == 0; }
  [[nodiscard]] Rational to_rational() const {
    Rational q(twice, 2);
    q.canonicalize();
    return q;
  }
  [[nodiscard]] Real to_real() const { return Real(twice) / 2; }
  friend auto operator<=>(const HalfInt&, const HalfInt&) = default;
};

enum class ScalarMode { ExactRational, ComplexFloat };

/// Coefficient value: exact rational or a complex float. Mixed arithmetic
/// promotes to complex at the current precision.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational q) : value_(std::move(q)) { std::get<Rational>(value_).canonicalize(); }  // NOLINT
  Scalar(Complex z) : value_(std::move(z)) {}  // NOLINT
  static Scalar from_int(long v) { return Scalar(Rational(v)); }

  [[nodiscard]] ScalarMode mode() const {
    return std::holds_alternative<Rational>(value_) ? ScalarMode::ExactRational
                                                    : ScalarMode::ComplexFloat;
  }
  [[nodiscard]] bool is_rational() const { return mode() == ScalarMode::ExactRational; }
  [[nodiscard]] const Rational& rational() const { return std::get<Rational>(value_); }
  [[nodiscard]] Complex to_complex() const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] Scalar conj() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator-(const Scalar& a);
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  std::variant<Rational, Complex> value_;
};

/// Kahan-compensated accumulator; reproducible for a fixed input order.
template <class T>
class KahanSum {
 public:
  KahanSum() : sum_(), comp_() {}
  KahanSum& operator+=(const T& x) {
    T y = x - comp_;
    T t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
    return *this;
  }
  [[nodiscard]] const T& value() const { return sum_; }

 private:
  T sum_;
  T comp_;
};

template <>
class KahanSum<Complex> {
 public:
  KahanSum& operator+=(const Complex& x) {
    re_ += x.re;
    im_ += x.im;
    return *this;
  }
  [[nodiscard]] Complex value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum<Real> re_;
  KahanSum<Real> im_;
};

}  // namespace jacobi
