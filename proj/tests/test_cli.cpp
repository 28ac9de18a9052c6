#include "doctest.h"

#include "jacobi/expansion.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("jacobi_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(JACOBI_CLI) + " " + args + " > " + out.string() + " 2> " +
                          err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string path(const std::string& name) { return (work_dir() / name).string(); }

}  // namespace

TEST_CASE("eis writes the expansion") {
  const auto r = run("eis --k 4 --index 1 --nmax 10 --cmax 40 --out " + path("e4.json"));
  REQUIRE(r.code == 0);
  const auto e = jacobi::read_expansion_file(path("e4.json"));
  CHECK(e.coeff(0, {0}).to_complex().re == 1);
  CHECK(e.n_max() == 10);
  CHECK(e.weight() == 4);
}

TEST_CASE("eis rejects even genus and small weight") {
  const auto even = run("eis --k 4 --index \"2 1 1 2\" --nmax 5");
  CHECK(even.code == 2);
  CHECK(even.err.find("cosecant") != std::string::npos);
  CHECK(run("eis --k 3 --index 1").code == 2);
  CHECK(run("eis --k 4 --index \"2 1 0 2\"").code == 2);
  CHECK(run("eis --index 1").code == 2);
}

TEST_CASE("bracket of order zero equals mul byte for byte") {
  REQUIRE(run("eis --k 4 --index 1 --nmax 6 --cmax 30 --out " + path("a.json")).code == 0);
  REQUIRE(run("eis --k 6 --index 1 --nmax 6 --cmax 30 --out " + path("b.json")).code == 0);
  const auto b0 = run("bracket " + path("a.json") + " " + path("b.json") + " --nu 0");
  const auto m = run("mul " + path("a.json") + " " + path("b.json"));
  REQUIRE(b0.code == 0);
  REQUIRE(m.code == 0);
  CHECK(b0.out == m.out);
  CHECK(!b0.out.empty());
}

TEST_CASE("bracket of order one is cusp flagged") {
  REQUIRE(run("eis --k 4 --index 1 --nmax 6 --cmax 30 --out " + path("a.json")).code == 0);
  REQUIRE(run("bracket " + path("a.json") + " " + path("a.json") + " --nu 1 --out " +
              path("aa.json")).code == 0);
  const auto f = jacobi::read_expansion_file(path("aa.json"));
  CHECK(f.cusp());
  CHECK(f.nu_power() == 1);
}

TEST_CASE("mismatched genus and malformed files") {
  {
    std::ofstream g3(path("g3.json"));
    g3 << R"({"g": 3, "weight": 4, "twice_index": [[2,0,0],[0,2,0],[0,0,2]], "n_max": 1,
 "cusp": false, "scalar": "rational", "coeffs": [{"n": 0, "r": [0,0,0], "re": "1", "im": "0"}]})";
  }
  REQUIRE(run("eis --k 4 --index 1 --nmax 3 --cmax 20 --out " + path("a.json")).code == 0);
  CHECK(run("bracket " + path("a.json") + " " + path("g3.json") + " --nu 1").code == 2);
  CHECK(run("mul " + path("a.json") + " " + path("g3.json")).code == 2);
  {
    std::ofstream bad(path("bad.json"));
    bad << "{\"g\": 1,\n \"weight\": \"four\"}";
  }
  const auto r = run("mul " + path("bad.json") + " " + path("a.json"));
  CHECK(r.code == 2);
  CHECK(r.err.find("weight") != std::string::npos);
  CHECK(run("mul " + path("missing.json") + " " + path("a.json")).code == 2);
}

TEST_CASE("verify rejects violated hypotheses") {
  REQUIRE(run("eis --k 4 --index 1 --nmax 4 --cmax 20 --out " + path("e41.json")).code == 0);
  REQUIRE(run("eis --k 7 --index 1 --nmax 4 --cmax 20 --out " + path("e71.json")).code == 0);
  REQUIRE(run("bracket " + path("e41.json") + " " + path("e71.json") + " --nu 1 --out " +
              path("f.json")).code == 0);
  const auto r = run("verify " + path("f.json") + " " + path("e41.json") +
                     " --k2 7 --index2 1 --nu 1 --grid 8,8,8,8");
  CHECK(r.code == 2);
  CHECK(r.err.find("k2 > k1+g+2") != std::string::npos);
}

TEST_CASE("verify emits a report for either kernel") {
  REQUIRE(run("eis --k 4 --index 1 --nmax 4 --cmax 20 --out " + path("e41.json")).code == 0);
  REQUIRE(run("eis --k 8 --index 1 --nmax 4 --cmax 20 --out " + path("e81.json")).code == 0);
  REQUIRE(run("bracket " + path("e41.json") + " " + path("e81.json") + " --nu 1 --out " +
              path("f.json")).code == 0);
  for (const std::string flag : {"4pi", "2pi"}) {
    const auto r = run("--threads 2 verify " + path("f.json") + " " + path("e41.json") +
                       " --k2 8 --index2 1 --nu 1 --grid 8,8,8,8 --cmax 20 --measure-flag " + flag);
    CHECK((r.code == 0 || r.code == 3));
    CHECK(r.out.find("\"measure_flag\": \"" + flag + "\"") != std::string::npos);
    CHECK(r.out.find("b_vs_c") != std::string::npos);
  }
  CHECK(run("verify " + path("f.json") + " " + path("e41.json") +
            " --k2 8 --index2 1 --nu 1 --grid 4,8,8,8").code == 2);
}

TEST_CASE("poincare and eval") {
  const auto p = run("poincare --k 10 --index 2 --n 1 --r 0 --nmax 3 --cmax 20 --out " +
                     path("p.json"));
  REQUIRE(p.code == 0);
  const auto f = jacobi::read_expansion_file(path("p.json"));
  CHECK(f.cusp());
  CHECK(run("poincare --k 10 --index 2 --n 1 --r 3").code == 2);
  const auto ev = run("eval " + path("p.json") + " --tau 0,1 --z 0.1,0");
  CHECK(ev.code == 0);
  CHECK(ev.out.find("tail_bound") != std::string::npos);
  CHECK(run("eval " + path("p.json") + " --tau 0,-1").code == 2);
}

TEST_CASE("selftest and its corruption hook") {
  const auto ok = run("selftest");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("6/6") != std::string::npos);
  const auto bad = run("selftest --corrupt-constant");
  CHECK(bad.code == 3);
  CHECK(bad.out.find("FAIL") != std::string::npos);
}
