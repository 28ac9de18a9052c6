#include "jacobi/selftest.hpp"

#include "jacobi/heat_rc.hpp"
#include "jacobi/random.hpp"

#include <iomanip>
#include <sstream>

namespace jacobi {

namespace {

SelftestRow check_vanishing_sum() {
  long cases = 0;
  for (unsigned nu = 1; nu <= 10; ++nu) {
    for (unsigned u = 0; u < nu; ++u) {
      for (unsigned v = 0; u + v < nu; ++v) {
        ++cases;
        if (vanishing_sum(nu, u, v) != 0) {
          return {"vanishing_sum", false,
                  "nonzero at (" + std::to_string(nu) + "," + std::to_string(u) + "," +
                      std::to_string(v) + ")"};
        }
      }
    }
  }
  return {"vanishing_sum", true, std::to_string(cases) + " cases, u+v < nu <= 10"};
}

SelftestRow check_big_d(Rng& rng, bool corrupt) {
  const int cases = 300;
  for (int i = 0; i < cases; ++i) {
    const int g = 1 + i % 3;
    const HalfIntMatrix m = random_index(rng, g);
    const FourierIndex p = random_support_point(rng, m, 12);
    const SupportPoint s = support_point(m, p.n, p.r);
    Rational factor = 1;
    for (int j = 0; j < (corrupt ? g : g - 1); ++j) factor *= 2;
    if (s.big_d != factor * s.disc) {
      return {"det(2T) = 2^{g-1} disc", false, "mismatch at case " + std::to_string(i)};
    }
  }
  return {"det(2T) = 2^{g-1} disc", true, std::to_string(cases) + " random (M, n, r), g <= 3"};
}

SelftestRow check_adjugate(Rng& rng) {
  const int cases = 60;
  for (int i = 0; i < cases; ++i) {
    const int g = 1 + i % 3;
    const HalfIntMatrix m = random_index(rng, g);
    for (int a = 0; a < g; ++a) {
      for (int b = 0; b < g; ++b) {
        Rational s = 0;
        for (int c = 0; c < g; ++c) s += m.adjugate()[a][c] * m.entry(c, b);
        if (s != (a == b ? m.det() : Rational(0))) {
          return {"adjugate * M = |M| I", false, "mismatch at case " + std::to_string(i)};
        }
      }
    }
  }
  return {"adjugate * M = |M| I", true, std::to_string(cases) + " random M, g <= 3"};
}

SelftestRow check_bracket_nu0(Rng& rng) {
  const int cases = 20;
  for (int i = 0; i < cases; ++i) {
    const int g = 1 + 2 * (i % 2);
    const auto f = random_rational_expansion(rng, 4, random_index(rng, g), 4, 6);
    const auto h = random_rational_expansion(rng, 6, random_index(rng, g), 4, 6);
    if (!(rc_bracket(f, h, 0) == mul(f, h))) {
      return {"[F,G]_0 = F G", false, "mismatch at case " + std::to_string(i)};
    }
  }
  return {"[F,G]_0 = F G", true, std::to_string(cases) + " random rational pairs"};
}

SelftestRow check_bracket_swap(Rng& rng) {
  const int cases = 12;
  for (int i = 0; i < cases; ++i) {
    const HalfIntMatrix m1 = random_index(rng, 1);
    const HalfIntMatrix m2 = random_index(rng, 1);
    const auto f = random_rational_expansion(rng, 5, m1, 4, 6);
    const auto h = random_rational_expansion(rng, 7, m2, 4, 6);
    const unsigned nu = 1 + i % 3;
    try {
      const auto fg = rc_bracket(f, h, nu);
      const auto gf = rc_bracket(h, f, nu);
      const Scalar sign = Scalar::from_int(nu % 2 == 0 ? 1 : -1);
      if (!(fg == scale(sign, gf))) {
        return {"[F,G]_nu = (-1)^nu [G,F]_nu", false, "mismatch at case " + std::to_string(i)};
      }
    } catch (const std::exception& e) {
      return {"[F,G]_nu = (-1)^nu [G,F]_nu", false, e.what()};
    }
  }
  return {"[F,G]_nu = (-1)^nu [G,F]_nu", true, std::to_string(cases) + " random pairs, nu <= 3"};
}

SelftestRow check_heat(Rng& rng) {
  for (int i = 0; i < 10; ++i) {
    const auto f = random_rational_expansion(rng, 4, random_index(rng, 1 + i % 3), 5, 8);
    if (!(heat_apply(f, 3) == heat_apply(heat_apply(f, 1), 2))) {
      return {"L^(a+b) = L^b L^a", false, "mismatch at case " + std::to_string(i)};
    }
  }
  return {"L^(a+b) = L^b L^a", true, "10 random expansions"};
}

}  // namespace

std::vector<SelftestRow> run_selftest(bool corrupt_constant, unsigned long seed) {
  Rng rng(seed);
  std::vector<SelftestRow> rows;
  rows.push_back(check_vanishing_sum());
  rows.push_back(check_big_d(rng, corrupt_constant));
  rows.push_back(check_adjugate(rng));
  rows.push_back(check_bracket_nu0(rng));
  rows.push_back(check_bracket_swap(rng));
  rows.push_back(check_heat(rng));
  return rows;
}

std::string format_selftest(const std::vector<SelftestRow>& rows) {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  int passed = 0;
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << r.name
        << (r.pass ? "PASS  " : "FAIL  ") << r.detail << '\n';
    passed += r.pass ? 1 : 0;
  }
  out << passed << "/" << rows.size() << " identities hold\n";
  return out.str();
}

}  // namespace jacobi
