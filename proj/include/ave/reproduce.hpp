#pragma once

// Drivers that rerun the published experiments: example 1 at several sizes
// (IT / RES table) and the four 2x2 examples.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ave/core.hpp"
#include "ave/solver.hpp"

namespace ave {

struct PublishedRow {
  std::size_t n;
  std::size_t iterations;
  double residual;
};

/// Published IT/RES values for example 1.
std::span<const PublishedRow> published_table1();

struct Table1Row {
  std::size_t n = 0;
  std::size_t iterations = 0;
  double residual = 0.0;
  SolveStatus status = SolveStatus::IterationCapReached;
  double seconds = 0.0;
  std::optional<PublishedRow> published;
};

/// Example 1 from x0 = ones with tol 1e-7. `dense` forces the O(n^3) path.
Table1Row run_table1_row(std::size_t n, bool dense = false);
std::vector<Table1Row> run_table1(std::span<const std::size_t> sizes, bool dense = false);

struct ExampleCheck {
  int example = 0;
  SolveReport report;
  Vector expected_x;
  std::size_t expected_iterations = 0;
  double max_error = 0.0;
  bool pass = false;  ///< solution within 1e-9 and iterations <= expected + 1
};

/// Examples 2-5 with x0 = ones (2, 3) or (1, -1) (4, 5).
std::vector<ExampleCheck> run_examples();

}  // namespace ave
