#include "ave/reproduce.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>

#include "ave/problems.hpp"

namespace ave {

namespace {

constexpr std::array<PublishedRow, 5> kTable1{{
    {2000, 3, 2.6634e-14},
    {4000, 3, 3.6610e-14},
    {6000, 2, 4.5385e-14},
    {8000, 3, 5.1692e-14},
    {10000, 2, 5.7936e-14},
}};

struct PublishedExample {
  int k;
  Vector x0;
  Vector solution;
  std::size_t iterations;
};

}  // namespace

std::span<const PublishedRow> published_table1() { return kTable1; }

Table1Row run_table1_row(std::size_t n, bool dense) {
  AveProblem p = gen_example1(n);
  if (dense) p = AveProblem(p.to_dense(), p.b());
  SolverConfig cfg;
  cfg.tol = 1e-7;

  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = gnm_solve(p, cfg);
  const auto t1 = std::chrono::steady_clock::now();

  Table1Row row;
  row.n = n;
  row.iterations = rep.iterations;
  row.residual = rep.residual;
  row.status = rep.status;
  row.seconds = std::chrono::duration<double>(t1 - t0).count();
  for (const auto& pub : kTable1)
    if (pub.n == n) row.published = pub;
  return row;
}

std::vector<Table1Row> run_table1(std::span<const std::size_t> sizes, bool dense) {
  std::vector<Table1Row> rows;
  rows.reserve(sizes.size());
  for (std::size_t n : sizes) rows.push_back(run_table1_row(n, dense));
  return rows;
}

std::vector<ExampleCheck> run_examples() {
  const std::array<PublishedExample, 4> examples{{
      {2, {1.0, 1.0}, {88.0, 32.0}, 1},
      {3, {1.0, 1.0}, {-2.24, -1.2}, 2},
      {4, {1.0, -1.0}, {-4.0, -6.0}, 2},
      {5, {1.0, -1.0}, {-2.0, -3.0}, 2},
  }};
  std::vector<ExampleCheck> out;
  for (const auto& ex : examples) {
    SolverConfig cfg;
    cfg.x0 = ex.x0;
    ExampleCheck c;
    c.example = ex.k;
    c.report = gnm_solve(gen_example_k(ex.k), cfg);
    c.expected_x = ex.solution;
    c.expected_iterations = ex.iterations;
    for (std::size_t i = 0; i < ex.solution.size(); ++i)
      c.max_error = std::max(c.max_error, std::abs(c.report.x[i] - ex.solution[i]));
    const bool solved = c.report.status == SolveStatus::Converged ||
                        c.report.status == SolveStatus::SignStabilized;
    c.pass = solved && c.max_error <= 1e-9 && c.report.iterations <= ex.iterations + 1;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace ave
