#pragma once

// Truncated sparse Fourier expansions  sum c(n, r) e(n tau + r z).

#include "jacobi/lattice.hpp"
#include "jacobi/scalar.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>

namespace jacobi {

struct FourierIndex {
  long n = 0;
  IntVector r;
  friend auto operator<=>(const FourierIndex&, const FourierIndex&) = default;
};

/// Index matrix that may also be the zero matrix (weight-k modular forms
/// embedded as index 0, e.g. the constant 1).
class JacobiIndex {
 public:
  static JacobiIndex zero(int g) { return JacobiIndex(g); }
  JacobiIndex(HalfIntMatrix m) : genus_(m.genus()), m_(std::move(m)) {}  // NOLINT

  [[nodiscard]] int genus() const { return genus_; }
  [[nodiscard]] bool is_zero() const { return !m_.has_value(); }
  /// Throws ValidationError for the zero index.
  [[nodiscard]] const HalfIntMatrix& matrix() const;
  [[nodiscard]] std::vector<std::vector<long>> twice_rows() const;
  [[nodiscard]] Rational det() const;
  /// 4n|M| - M~[r^t]; for the zero index, 0 when r = 0 and -1 otherwise.
  [[nodiscard]] Rational disc(long n, const IntVector& r) const;
  [[nodiscard]] bool in_support(long n, const IntVector& r, bool strict) const;

  friend JacobiIndex operator+(const JacobiIndex& a, const JacobiIndex& b);
  friend bool operator==(const JacobiIndex& a, const JacobiIndex& b);

 private:
  explicit JacobiIndex(int g) : genus_(g) {}
  int genus_;
  std::optional<HalfIntMatrix> m_;
};

class JacobiExpansion {
 public:
  using CoeffMap = std::map<FourierIndex, Scalar>;

  JacobiExpansion(int weight, JacobiIndex index, long n_max, bool cusp, ScalarMode mode);

  /// Weight 0, index 0, coefficient 1 at (0, 0).
  static JacobiExpansion constant_one(int g, long n_max);

  [[nodiscard]] int genus() const { return index_.genus(); }
  [[nodiscard]] int weight() const { return weight_; }
  [[nodiscard]] const JacobiIndex& index() const { return index_; }
  [[nodiscard]] long n_max() const { return n_max_; }
  [[nodiscard]] bool cusp() const { return cusp_; }
  [[nodiscard]] ScalarMode mode() const { return mode_; }
  /// Number of normalised heat applications folded in: stored values are
  /// (2 pi i)^{-2 nu_power} times the unnormalised ones.
  [[nodiscard]] int nu_power() const { return nu_power_; }
  [[nodiscard]] const CoeffMap& coeffs() const { return coeffs_; }
  [[nodiscard]] Scalar coeff(long n, const IntVector& r) const;

  /// Stores a coefficient, enforcing the support and truncation
  /// invariants; zeros are not stored.
  void set(long n, const IntVector& r, Scalar value);
  void set_weight(int k) { weight_ = k; }
  void set_nu_power(int p) { nu_power_ = p; }
  void set_cusp(bool c) { cusp_ = c; }

  friend bool operator==(const JacobiExpansion& a, const JacobiExpansion& b);

 private:
  int weight_;
  JacobiIndex index_;
  long n_max_;
  bool cusp_;
  ScalarMode mode_;
  int nu_power_ = 0;
  CoeffMap coeffs_;
};

JacobiExpansion add(const JacobiExpansion& f, const JacobiExpansion& g);
JacobiExpansion scale(const Scalar& c, const JacobiExpansion& f);
JacobiExpansion mul(const JacobiExpansion& f, const JacobiExpansion& g);

/// Per-split weight w(p1, p2) for a Cauchy convolution.
using SplitWeight = std::function<Rational(const FourierIndex&, const FourierIndex&)>;

/// sum over splits p1 + p2 = p of w(p1, p2) a(p1) b(p2), truncated at
/// min(n_max); splits with zero weight are skipped. Iteration follows the
/// lexicographic order of both inputs.
JacobiExpansion convolve(const JacobiExpansion& f, const JacobiExpansion& g, const SplitWeight& w);

struct EvalResult {
  Complex value;
  double tail_bound = 0;
};

/// Sum of the stored terms at (tau, z), in lexicographic order with
/// compensated summation; throws ValidationError when Im tau <= 0.
EvalResult eval_point(const JacobiExpansion& f, const Complex& tau, const std::vector<Complex>& z,
                      unsigned precision_bits = kDefaultPrecisionBits);

/// Heuristic tail sum_{n > n_max} #r(n) n^{k-g/2-1} e^{-2 pi n v_min},
/// implied constant 1.
double estimate_tail(int k, const JacobiIndex& m, long n_max, double v_min);

std::string serialize(const JacobiExpansion& f);
JacobiExpansion deserialize(const std::string& text);

JacobiExpansion read_expansion_file(const std::string& path);
void write_expansion_file(const JacobiExpansion& f, const std::string& path);

}  // namespace jacobi
