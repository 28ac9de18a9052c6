#include "jacobi/expansion.hpp"

#include "jacobi/error.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace jacobi {

// ---------------------------------------------------------------- JacobiIndex

const HalfIntMatrix& JacobiIndex::matrix() const {
  if (!m_) throw ValidationError("operation needs a positive-definite index");
  return *m_;
}

std::vector<std::vector<long>> JacobiIndex::twice_rows() const {
  if (m_) return m_->twice_rows();
  return std::vector<std::vector<long>>(genus_, std::vector<long>(genus_, 0));
}

Rational JacobiIndex::det() const { return m_ ? m_->det() : Rational(0); }

Rational JacobiIndex::disc(long n, const IntVector& r) const {
  if (static_cast<int>(r.size()) != genus_) throw ValidationError("r has wrong length");
  if (!m_) {
    for (long v : r) {
      if (v != 0) return -1;
    }
    return 0;
  }
  Rational d = 4 * n * m_->det() - adjugate_form(*m_, r);
  d.canonicalize();
  return d;
}

bool JacobiIndex::in_support(long n, const IntVector& r, bool strict) const {
  if (n < 0) return false;
  if (!m_) {
    for (long v : r) {
      if (v != 0) return false;
    }
    return strict ? n > 0 : true;
  }
  const Rational d = disc(n, r);
  return strict ? d > 0 : d >= 0;
}

JacobiIndex operator+(const JacobiIndex& a, const JacobiIndex& b) {
  if (a.genus() != b.genus()) throw ValidationError("genus mismatch in index sum");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return JacobiIndex(a.matrix() + b.matrix());
}

bool operator==(const JacobiIndex& a, const JacobiIndex& b) {
  return a.genus() == b.genus() && a.twice_rows() == b.twice_rows();
}

// ------------------------------------------------------------ JacobiExpansion

JacobiExpansion::JacobiExpansion(int weight, JacobiIndex index, long n_max, bool cusp,
                                 ScalarMode mode)
    : weight_(weight), index_(std::move(index)), n_max_(n_max), cusp_(cusp), mode_(mode) {
  if (n_max < 0) throw ValidationError("n_max must be non-negative");
}

JacobiExpansion JacobiExpansion::constant_one(int g, long n_max) {
  JacobiExpansion one(0, JacobiIndex::zero(g), n_max, false, ScalarMode::ExactRational);
  one.set(0, IntVector(g, 0), Scalar::from_int(1));
  return one;
}

Scalar JacobiExpansion::coeff(long n, const IntVector& r) const {
  auto it = coeffs_.find(FourierIndex{n, r});
  if (it == coeffs_.end()) {
    return mode_ == ScalarMode::ExactRational ? Scalar() : Scalar(Complex());
  }
  return it->second;
}

void JacobiExpansion::set(long n, const IntVector& r, Scalar value) {
  if (static_cast<int>(r.size()) != genus()) throw ValidationError("r has wrong length");
  if (n > n_max_) throw ValidationError("coefficient beyond n_max");
  if (!index_.in_support(n, r, cusp_)) {
    throw ValidationError(std::string("coefficient outside the ") +
                          (cusp_ ? "cusp " : "") + "support: 4n < M^{-1}[r]");
  }
  if (mode_ == ScalarMode::ExactRational && !value.is_rational()) {
    throw ValidationError("complex value in an exact rational expansion");
  }
  if (mode_ == ScalarMode::ComplexFloat && value.is_rational()) value = Scalar(value.to_complex());
  FourierIndex key{n, r};
  if (value.is_zero()) {
    coeffs_.erase(key);
    return;
  }
  coeffs_[std::move(key)] = std::move(value);
}

bool operator==(const JacobiExpansion& a, const JacobiExpansion& b) {
  return a.weight_ == b.weight_ && a.index_ == b.index_ && a.n_max_ == b.n_max_ &&
         a.cusp_ == b.cusp_ && a.mode_ == b.mode_ && a.nu_power_ == b.nu_power_ &&
         a.coeffs_ == b.coeffs_;
}

namespace {

ScalarMode joint_mode(ScalarMode a, ScalarMode b) {
  return (a == ScalarMode::ExactRational && b == ScalarMode::ExactRational)
             ? ScalarMode::ExactRational
             : ScalarMode::ComplexFloat;
}

}  // namespace

JacobiExpansion add(const JacobiExpansion& f, const JacobiExpansion& g) {
  if (f.genus() != g.genus()) throw ValidationError("add: genus mismatch");
  if (f.weight() != g.weight()) throw ValidationError("add: weight mismatch");
  if (!(f.index() == g.index())) throw ValidationError("add: index mismatch");
  if (f.nu_power() != g.nu_power()) throw ValidationError("add: heat normalisation mismatch");
  JacobiExpansion out(f.weight(), f.index(), std::min(f.n_max(), g.n_max()),
                      f.cusp() && g.cusp(), joint_mode(f.mode(), g.mode()));
  out.set_nu_power(f.nu_power());
  std::map<FourierIndex, Scalar> acc;
  for (const auto* src : {&f, &g}) {
    for (const auto& [key, value] : src->coeffs()) {
      if (key.n > out.n_max()) continue;
      auto it = acc.find(key);
      if (it == acc.end()) {
        acc.emplace(key, value);
      } else {
        it->second += value;
      }
    }
  }
  for (auto& [key, value] : acc) out.set(key.n, key.r, std::move(value));
  return out;
}

JacobiExpansion scale(const Scalar& c, const JacobiExpansion& f) {
  JacobiExpansion out(f.weight(), f.index(), f.n_max(), f.cusp(), joint_mode(c.mode(), f.mode()));
  out.set_nu_power(f.nu_power());
  for (const auto& [key, value] : f.coeffs()) out.set(key.n, key.r, c * value);
  return out;
}

JacobiExpansion convolve(const JacobiExpansion& f, const JacobiExpansion& g, const SplitWeight& w) {
  if (f.genus() != g.genus()) throw ValidationError("product: genus mismatch");
  const int dim = f.genus();
  const long n_max = std::min(f.n_max(), g.n_max());
  // The strict inequality survives addition of a strict and a non-strict
  // point (subadditivity of r M^{-1} r^t in (r, M)).
  JacobiExpansion out(f.weight() + g.weight(), f.index() + g.index(), n_max,
                      f.cusp() || g.cusp(), joint_mode(f.mode(), g.mode()));
  out.set_nu_power(f.nu_power() + g.nu_power());
  std::map<FourierIndex, Scalar> acc;
  for (const auto& [ka, a] : f.coeffs()) {
    if (ka.n > n_max) break;
    for (const auto& [kb, b] : g.coeffs()) {
      if (ka.n + kb.n > n_max) break;
      Scalar term = a * b;
      if (w) {
        Rational weight = w(ka, kb);
        if (weight == 0) continue;
        if (weight != 1) term *= Scalar(weight);
      }
      FourierIndex key{ka.n + kb.n, IntVector(dim)};
      for (int i = 0; i < dim; ++i) key.r[i] = ka.r[i] + kb.r[i];
      auto it = acc.find(key);
      if (it == acc.end()) {
        acc.emplace(std::move(key), std::move(term));
      } else {
        it->second += term;
      }
    }
  }
  for (auto& [key, value] : acc) out.set(key.n, key.r, std::move(value));
  return out;
}

JacobiExpansion mul(const JacobiExpansion& f, const JacobiExpansion& g) {
  return convolve(f, g, nullptr);
}

// ----------------------------------------------------------------- evaluation

double estimate_tail(int k, const JacobiIndex& m, long n_max, double v_min) {
  if (!(v_min > 0)) throw ValidationError("tail estimate needs Im tau > 0");
  const int g = m.genus();
  const double power = k - g / 2.0 - 1.0;
  const double rate = 2.0 * M_PI * v_min;
  const double n_peak = power > 0 ? power / rate : 0.0;
  double total = 0;
  for (long n = n_max + 1; n < n_max + 10'000'000; ++n) {
    double log_count = 0;
    if (!m.is_zero()) {
      for (int i = 0; i < g; ++i) {
        log_count += std::log(2.0 * coordinate_bound(m.matrix(), n, i) + 1.0);
      }
    }
    const double term = std::exp(log_count + power * std::log(static_cast<double>(n)) - rate * n);
    total += term;
    if (n > n_peak && (term == 0 || term < 1e-20 * total)) break;
  }
  return total;
}

EvalResult eval_point(const JacobiExpansion& f, const Complex& tau, const std::vector<Complex>& z,
                      unsigned precision_bits) {
  if (!(tau.im > 0)) throw ValidationError("eval_point needs Im tau > 0");
  if (static_cast<int>(z.size()) != f.genus()) throw ValidationError("z has wrong length");
  EvalResult result;
  {
    PrecisionScope scope(precision_bits);
    const Complex two_pi_i(Real(0), 2 * real_pi());
    Complex t(Real(tau.re), Real(tau.im));
    std::vector<Complex> zz(z.begin(), z.end());
    KahanSum<Complex> acc;
    for (const auto& [key, value] : f.coeffs()) {
      Complex phase = t * Real(key.n);
      for (int i = 0; i < f.genus(); ++i) phase += zz[i] * Real(key.r[i]);
      acc += value.to_complex() * exp(two_pi_i * phase);
    }
    result.value = acc.value();
  }
  result.tail_bound = estimate_tail(f.weight(), f.index(), f.n_max(), tau.im.convert_to<double>());
  return result;
}

// -------------------------------------------------------------- serialization

namespace {

using nlohmann::ordered_json;

struct LineMap {
  std::map<std::string, std::size_t> top_level;  // key -> line
  std::vector<std::size_t> coeff_lines;          // line of each coeffs[] entry
};

// Locates top-level keys and coefficient entries in the raw text so that
// field errors found after parsing can name a line.
LineMap locate_lines(const std::string& text) {
  LineMap out;
  std::size_t line = 1;
  int depth = 0;
  bool in_coeffs = false;
  std::string last_key;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
    } else if (c == '"') {
      std::size_t j = i + 1;
      std::string s;
      while (j < text.size() && text[j] != '"') {
        if (text[j] == '\\') ++j;
        if (j < text.size()) s.push_back(text[j]);
        ++j;
      }
      if (depth == 1) {
        out.top_level.emplace(s, line);
        last_key = s;
      }
      i = j;
    } else if (c == '{' || c == '[') {
      if (c == '[' && depth == 1) in_coeffs = (last_key == "coeffs");
      if (c == '{' && depth == 2 && in_coeffs) out.coeff_lines.push_back(line);
      ++depth;
    } else if (c == '}' || c == ']') {
      --depth;
      if (depth == 1) in_coeffs = false;
    }
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const std::string& text) : lines_(locate_lines(text)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    auto it = lines_.top_level.find(field);
    throw ParseError(field, it == lines_.top_level.end() ? 1 : it->second, what);
  }
  [[noreturn]] void fail_coeff(std::size_t idx, const std::string& field,
                               const std::string& what) const {
    const std::size_t line = idx < lines_.coeff_lines.size() ? lines_.coeff_lines[idx] : 1;
    throw ParseError("coeffs[" + std::to_string(idx) + "]." + field, line, what);
  }

  const ordered_json& require(const ordered_json& obj, const std::string& key) const {
    if (!obj.contains(key)) fail(key, "missing field");
    return obj.at(key);
  }

  long integer(const ordered_json& obj, const std::string& key) const {
    const auto& v = require(obj, key);
    if (!v.is_number_integer()) fail(key, "expected an integer");
    return v.get<long>();
  }

 private:
  LineMap lines_;
};

Scalar parse_component(const ordered_json& v, ScalarMode mode, bool* ok) {
  *ok = true;
  try {
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (mode == ScalarMode::ExactRational || s.find('/') != std::string::npos) {
        Rational q = parse_rational(s);
        if (mode == ScalarMode::ExactRational) return Scalar(q);
        return Scalar(Complex(to_real(q)));
      }
      return Scalar(Complex(parse_real(s)));
    }
    if (v.is_number_integer()) {
      Rational q(v.dump());
      if (mode == ScalarMode::ExactRational) return Scalar(q);
      return Scalar(Complex(to_real(q)));
    }
    if (v.is_number() && mode == ScalarMode::ComplexFloat) {
      return Scalar(Complex(parse_real(v.dump())));
    }
  } catch (const std::invalid_argument&) {
  }
  *ok = false;
  return {};
}

}  // namespace

std::string serialize(const JacobiExpansion& f) {
  ordered_json root;
  root["g"] = f.genus();
  root["weight"] = f.weight();
  root["twice_index"] = f.index().twice_rows();
  root["n_max"] = f.n_max();
  root["cusp"] = f.cusp();
  const bool rational = f.mode() == ScalarMode::ExactRational;
  root["scalar"] = rational ? "rational" : "complex";
  std::ostringstream out;
  // Hand layout: header fields on one line each, one coefficient per line.
  out << "{\n";
  for (const auto& [key, value] : root.items()) out << "  \"" << key << "\": " << value.dump() << ",\n";
  out << "  \"coeffs\": [";
  bool first = true;
  for (const auto& [key, value] : f.coeffs()) {
    ordered_json c;
    c["n"] = key.n;
    c["r"] = key.r;
    if (rational) {
      c["re"] = format_rational(value.rational());
      c["im"] = "0";
    } else {
      const Complex z = value.to_complex();
      c["re"] = format_real(z.re);
      c["im"] = format_real(z.im);
    }
    out << (first ? "\n    " : ",\n    ") << c.dump();
    first = false;
  }
  out << (first ? "]" : "\n  ]");
  if (f.nu_power() != 0) out << ",\n  \"nu_power\": " << f.nu_power();
  if (!rational) out << ",\n  \"precision_bits\": " << current_precision_bits();
  out << "\n}\n";
  return out.str();
}

JacobiExpansion deserialize(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const std::size_t line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw ParseError("<syntax>", line, e.what());
  }
  Reader rd(text);
  if (!root.is_object()) throw ParseError("<root>", 1, "expected a JSON object");

  const long g = rd.integer(root, "g");
  if (g < 1) rd.fail("g", "genus must be positive");
  const long weight = rd.integer(root, "weight");
  const long n_max = rd.integer(root, "n_max");
  if (n_max < 0) rd.fail("n_max", "must be non-negative");
  const auto& cusp_v = rd.require(root, "cusp");
  if (!cusp_v.is_boolean()) rd.fail("cusp", "expected a boolean");
  const auto& scalar_v = rd.require(root, "scalar");
  if (!scalar_v.is_string()) rd.fail("scalar", "expected \"rational\" or \"complex\"");
  const auto scalar_name = scalar_v.get<std::string>();
  ScalarMode mode;
  if (scalar_name == "rational") {
    mode = ScalarMode::ExactRational;
  } else if (scalar_name == "complex") {
    mode = ScalarMode::ComplexFloat;
  } else {
    rd.fail("scalar", "expected \"rational\" or \"complex\"");
  }

  const auto& idx_v = rd.require(root, "twice_index");
  std::vector<std::vector<long>> twice;
  bool all_zero = true;
  if (!idx_v.is_array() || static_cast<long>(idx_v.size()) != g) {
    rd.fail("twice_index", "expected a g x g integer matrix");
  }
  for (const auto& row : idx_v) {
    if (!row.is_array() || static_cast<long>(row.size()) != g) {
      rd.fail("twice_index", "expected a g x g integer matrix");
    }
    std::vector<long> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) rd.fail("twice_index", "entries must be integers");
      r.push_back(v.get<long>());
      all_zero = all_zero && r.back() == 0;
    }
    twice.push_back(std::move(r));
  }
  std::optional<JacobiIndex> index;
  if (all_zero) {
    index = JacobiIndex::zero(static_cast<int>(g));
  } else {
    try {
      index = JacobiIndex(HalfIntMatrix::from_twice(twice));
    } catch (const ValidationError& e) {
      rd.fail("twice_index", e.what());
    }
  }

  int nu_power = 0;
  if (root.contains("nu_power")) nu_power = static_cast<int>(rd.integer(root, "nu_power"));
  unsigned bits = current_precision_bits();
  if (root.contains("precision_bits")) {
    const long b = rd.integer(root, "precision_bits");
    if (b < 24) rd.fail("precision_bits", "must be at least 24");
    bits = static_cast<unsigned>(b);
  }
  PrecisionScope scope(mode == ScalarMode::ComplexFloat ? bits : current_precision_bits());

  JacobiExpansion out(static_cast<int>(weight), *index, n_max, cusp_v.get<bool>(), mode);
  out.set_nu_power(nu_power);
  const auto& coeffs = rd.require(root, "coeffs");
  if (!coeffs.is_array()) rd.fail("coeffs", "expected an array");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto& c = coeffs[i];
    if (!c.is_object()) rd.fail_coeff(i, "", "expected an object");
    if (!c.contains("n") || !c["n"].is_number_integer()) rd.fail_coeff(i, "n", "expected an integer");
    const long n = c["n"].get<long>();
    if (!c.contains("r") || !c["r"].is_array() || static_cast<long>(c["r"].size()) != g) {
      rd.fail_coeff(i, "r", "expected an integer vector of length g");
    }
    IntVector r;
    for (const auto& v : c["r"]) {
      if (!v.is_number_integer()) rd.fail_coeff(i, "r", "entries must be integers");
      r.push_back(v.get<long>());
    }
    Scalar parts[2];
    const char* names[2] = {"re", "im"};
    for (int p = 0; p < 2; ++p) {
      if (!c.contains(names[p])) rd.fail_coeff(i, names[p], "missing field");
      bool ok = false;
      parts[p] = parse_component(c[names[p]], mode, &ok);
      if (!ok) rd.fail_coeff(i, names[p], "not a valid " + scalar_name + " value");
    }
    Scalar value;
    if (mode == ScalarMode::ExactRational) {
      if (!parts[1].is_zero()) rd.fail_coeff(i, "im", "rational expansion with nonzero imaginary part");
      value = parts[0];
    } else {
      value = Scalar(Complex(parts[0].to_complex().re, parts[1].to_complex().re));
    }
    if (n > n_max) rd.fail_coeff(i, "n", "exceeds n_max");
    if (!out.index().in_support(n, r, out.cusp())) {
      rd.fail_coeff(i, "r", out.cusp() ? "violates 4n > M^{-1}[r] (cusp)" : "violates 4n >= M^{-1}[r]");
    }
    if (out.coeffs().count(FourierIndex{n, r})) rd.fail_coeff(i, "n", "duplicate support point");
    out.set(n, r, std::move(value));
  }
  return out;
}

JacobiExpansion read_expansion_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

void write_expansion_file(const JacobiExpansion& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << serialize(f);
}

}  // namespace jacobi
