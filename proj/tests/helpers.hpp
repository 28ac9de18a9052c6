#pragma once

#include "jacobi/expansion.hpp"
#include "oracle/brute.hpp"

namespace testing_support {

inline oracle::RatSeries to_series(const jacobi::JacobiExpansion& f) {
  oracle::RatSeries out;
  for (const auto& [key, value] : f.coeffs()) out[{key.n, key.r}] = value.rational();
  return out;
}

inline jacobi::HalfIntMatrix a2() { return jacobi::HalfIntMatrix::from_twice({{2, 1}, {1, 2}}); }

}  // namespace testing_support
