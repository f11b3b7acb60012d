#pragma once

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <span>

#include "ave/core.hpp"
#include "ave/problems.hpp"
#include "generators.hpp"

namespace testing {

inline double max_diff(std::span<const double> a, std::span<const double> b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_diff(const ave::DenseMatrix& a, const ave::DenseMatrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  return max_diff(a.entries(), b.entries());
}

#define CHECK_VEC_NEAR(a, b, tol) CHECK(::testing::max_diff((a), (b)) <= (tol))
#define CHECK_MAT_NEAR(a, b, tol) CHECK(::testing::max_diff((a), (b)) <= (tol))

}  // namespace testing
