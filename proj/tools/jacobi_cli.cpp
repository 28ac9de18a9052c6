#include "jacobi/eisenstein.hpp"
#include "jacobi/error.hpp"
#include "jacobi/heat_rc.hpp"
#include "jacobi/petersson.hpp"
#include "jacobi/poincare.hpp"
#include "jacobi/selftest.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace jacobi;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::vector<long> parse_ints(const std::string& text, const std::string& what) {
  std::string s = text;
  for (char& ch : s) {
    if (ch == ',' || ch == ';') ch = ' ';
  }
  std::istringstream in(s);
  std::vector<long> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ValidationError(what + ": '" + tok + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError(what + " is empty");
  return out;
}

// One value: the classical scalar index m. g^2 values: 2M row-major.
HalfIntMatrix parse_index(const std::string& text, const std::string& what) {
  const auto v = parse_ints(text, what);
  if (v.size() == 1) return HalfIntMatrix::scalar(v[0]);
  const auto g = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (g * g != v.size()) throw ValidationError(what + " needs 1 or g*g integers");
  std::vector<std::vector<long>> t(g, std::vector<long>(g));
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) t[i][j] = v[i * g + j];
  }
  return HalfIntMatrix::from_twice(t);
}

Complex parse_complex(const std::string& text, const std::string& what) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return Complex(parse_real(text));
    return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
  } catch (const std::invalid_argument&) {
    throw ValidationError(what + ": expected 're,im', got '" + text + "'");
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

struct Options {
  int k = 0;
  int k2 = 0;
  unsigned nu = 0;
  std::string index;
  std::string index2;
  long n = 1;
  std::string r = "0";
  long n_max = 10;
  long c_max = 100;
  unsigned precision_bits = kDefaultPrecisionBits;
  std::string grid = "64,64,64,16";
  double v_max = 8.0;
  std::string measure = "4pi";
  std::string hmc = "r";
  std::string gamma = "corrected";
  std::string theorem_constant = "printed";
  unsigned threads = 1;
  std::string out;
  std::string file_f;
  std::string file_g;
  std::string tau = "0,1";
  std::string z;
  bool corrupt = false;
};

int cmd_eis(const Options& o) {
  EisensteinParams p;
  p.k = o.k;
  p.m = parse_index(o.index, "--index");
  p.c_max = o.c_max;
  p.precision_bits = o.precision_bits;
  p.normalization =
      o.gamma == "printed" ? GammaNormalization::Printed : GammaNormalization::Corrected;
  check_eisenstein_params(p.k, p.m);
  if (o.n_max < 0) throw ValidationError("--nmax must be non-negative");
  PrecisionScope scope(o.precision_bits);
  emit(serialize(eisenstein_expansion(p, o.n_max)), o.out);
  return 0;
}

int cmd_poincare(const Options& o) {
  PoincareParams p;
  p.k = o.k;
  p.m = parse_index(o.index, "--index");
  p.n = o.n;
  p.r = parse_ints(o.r, "--r");
  p.c_max = o.c_max;
  p.precision_bits = o.precision_bits;
  p.convention = o.hmc == "rprime" ? HmcConvention::TargetR : HmcConvention::BaseR;
  check_poincare_params(p);
  PrecisionScope scope(o.precision_bits);
  emit(serialize(poincare_expansion(p, o.n_max)), o.out);
  return 0;
}

int cmd_bracket(const Options& o) {
  PrecisionScope scope(o.precision_bits);
  const auto f = read_expansion_file(o.file_f);
  const auto g = read_expansion_file(o.file_g);
  if (f.genus() != g.genus()) throw ValidationError("bracket: genus mismatch between inputs");
  emit(serialize(rc_bracket(f, g, o.nu)), o.out);
  return 0;
}

int cmd_mul(const Options& o) {
  PrecisionScope scope(o.precision_bits);
  const auto f = read_expansion_file(o.file_f);
  const auto g = read_expansion_file(o.file_g);
  if (f.genus() != g.genus()) throw ValidationError("mul: genus mismatch between inputs");
  emit(serialize(mul(f, g)), o.out);
  return 0;
}

QuadratureSpec parse_grid(const Options& o) {
  const auto v = parse_ints(o.grid, "--grid");
  if (v.size() != 4) throw ValidationError("--grid needs four counts u,v,p,q");
  QuadratureSpec q;
  q.nu = static_cast<int>(v[0]);
  q.nv = static_cast<int>(v[1]);
  q.np = static_cast<int>(v[2]);
  q.nq = static_cast<int>(v[3]);
  q.v_max = o.v_max;
  q.kernel = o.measure == "2pi" ? KernelConvention::TwoPi : KernelConvention::FourPi;
  q.threads = o.threads;
  q.validate();
  return q;
}

int cmd_verify(const Options& o) {
  PrecisionScope scope(o.precision_bits);
  const auto f = read_expansion_file(o.file_f);
  const auto g = read_expansion_file(o.file_g);
  VerifyOptions opt;
  opt.quadrature = parse_grid(o);
  opt.c_max = o.c_max;
  opt.n_max = o.n_max;
  opt.precision_bits = o.precision_bits;
  opt.gate = o.theorem_constant == "corrected" ? TheoremConstant::Corrected : TheoremConstant::Printed;
  const auto report = verify_theorem(f, g, o.k2, parse_index(o.index2, "--index2"), o.nu, opt);
  emit(report.to_json(), o.out);
  return report.algebra_ok() && report.quadrature_ok() ? 0 : kExitNumerical;
}

int cmd_eval(const Options& o) {
  const auto f = read_expansion_file(o.file_f);
  PrecisionScope scope(o.precision_bits);
  const Complex tau = parse_complex(o.tau, "--tau");
  std::vector<Complex> z;
  if (o.z.empty()) {
    z.assign(static_cast<std::size_t>(f.genus()), Complex());
  } else {
    std::istringstream in(o.z);
    std::string part;
    while (std::getline(in, part, ';')) z.push_back(parse_complex(part, "--z"));
  }
  const EvalResult res = eval_point(f, tau, z, o.precision_bits);
  nlohmann::ordered_json j;
  j["value"] = {{"re", format_real(res.value.re)}, {"im", format_real(res.value.im)}};
  j["tail_bound"] = res.tail_bound;
  emit(j.dump(2) + "\n", o.out);
  return 0;
}

int cmd_selftest(const Options& o) {
  const auto rows = run_selftest(o.corrupt);
  std::cout << format_selftest(rows);
  for (const auto& r : rows) {
    if (!r.pass) return kExitNumerical;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi forms: Eisenstein and Poincare coefficients, Rankin-Cohen brackets, "
               "Petersson products"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--precision-bits", o.precision_bits, "working precision in bits")
      ->check(CLI::Range(24u, 100000u));
  app.add_option("--threads", o.threads, "quadrature worker threads")->check(CLI::Range(1u, 1024u));

  auto* eis = app.add_subcommand("eis", "Eisenstein series E_{k,M}");
  eis->add_option("--k", o.k, "weight")->required();
  eis->add_option("--index", o.index, "m, or 2M row-major")->required();
  eis->add_option("--nmax", o.n_max, "truncation in n");
  eis->add_option("--cmax", o.c_max, "truncation of the c-series");
  eis->add_option("--gamma-normalization", o.gamma)
      ->check(CLI::IsMember({"corrected", "printed"}));
  eis->add_option("--out", o.out, "output file (default stdout)");

  auto* poin = app.add_subcommand("poincare", "Poincare series P_{k,M;(n,r)}");
  poin->add_option("--k", o.k, "weight")->required();
  poin->add_option("--index", o.index, "m, or 2M row-major")->required();
  poin->add_option("--n", o.n, "base n")->required();
  poin->add_option("--r", o.r, "base r (g integers)")->required();
  poin->add_option("--nmax", o.n_max, "truncation in n");
  poin->add_option("--cmax", o.c_max, "truncation of the c-series");
  poin->add_option("--hmc-r-convention", o.hmc)->check(CLI::IsMember({"r", "rprime"}));
  poin->add_option("--out", o.out, "output file (default stdout)");

  auto* brk = app.add_subcommand("bracket", "normalised Rankin-Cohen bracket [F,G]_nu");
  brk->add_option("F", o.file_f)->required();
  brk->add_option("G", o.file_g)->required();
  brk->add_option("--nu", o.nu, "bracket order")->required();
  brk->add_option("--out", o.out, "output file (default stdout)");

  auto* mul_cmd = app.add_subcommand("mul", "product F G");
  mul_cmd->add_option("F", o.file_f)->required();
  mul_cmd->add_option("G", o.file_g)->required();
  mul_cmd->add_option("--out", o.out, "output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "three-way check of <F, [G, E_{k2,M2}]_nu>");
  ver->add_option("F", o.file_f, "cusp form F")->required();
  ver->add_option("G", o.file_g, "form G")->required();
  ver->add_option("--k2", o.k2, "Eisenstein weight")->required();
  ver->add_option("--index2", o.index2, "Eisenstein index")->required();
  ver->add_option("--nu", o.nu, "bracket order")->required();
  ver->add_option("--grid", o.grid, "quadrature counts u,v,p,q");
  ver->add_option("--vmax", o.v_max, "upper cutoff in v");
  ver->add_option("--measure-flag", o.measure)->check(CLI::IsMember({"4pi", "2pi"}));
  ver->add_option("--theorem-constant", o.theorem_constant, "constant gating the exit code")
      ->check(CLI::IsMember({"printed", "corrected"}));
  ver->add_option("--nmax", o.n_max, "truncation (default: inputs')");
  ver->add_option("--cmax", o.c_max, "Eisenstein c-series truncation");
  ver->add_option("--out", o.out, "report file (default stdout)");

  auto* ev = app.add_subcommand("eval", "evaluate a truncated expansion at (tau, z)");
  ev->add_option("F", o.file_f)->required();
  ev->add_option("--tau", o.tau, "re,im");
  ev->add_option("--z", o.z, "re,im per coordinate, ';'-separated");
  ev->add_option("--out", o.out, "output file (default stdout)");

  auto* st = app.add_subcommand("selftest", "exact-identity suite");
  st->add_flag("--corrupt-constant", o.corrupt, "debug hook: perturb a constant")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  try {
    if (eis->parsed()) return cmd_eis(o);
    if (poin->parsed()) return cmd_poincare(o);
    if (brk->parsed()) return cmd_bracket(o);
    if (mul_cmd->parsed()) return cmd_mul(o);
    if (ver->parsed()) {
      if (ver->count("--nmax") == 0) o.n_max = -1;
      return cmd_verify(o);
    }
    if (ev->parsed()) return cmd_eval(o);
    if (st->parsed()) return cmd_selftest(o);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
