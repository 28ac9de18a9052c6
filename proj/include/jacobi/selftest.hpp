#pragma once

#include <string>
#include <vector>

namespace jacobi {

struct SelftestRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Exact-identity suite. `corrupt_constant` swaps the 2^{g-1} factor of the
/// discriminant identity for 2^g so that the suite must fail.
std::vector<SelftestRow> run_selftest(bool corrupt_constant = false, unsigned long seed = 20240501);

std::string format_selftest(const std::vector<SelftestRow>& rows);

}  // namespace jacobi
