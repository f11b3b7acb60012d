#include <doctest.h>

#include "ave/mclass.hpp"
#include "ave/problems.hpp"
#include "ave/solver.hpp"
#include "reference_values.hpp"
#include "support.hpp"

using namespace ave;

TEST_SUITE("solver") {

TEST_CASE("example 2 converges in one step") {
  const auto r = gnm_solve(gen_example_k(2));
  CHECK(r.status == SolveStatus::Converged);
  CHECK(r.iterations == 1);
  CHECK_VEC_NEAR(r.x, (Vector{88, 32}), 1e-12);
  CHECK(r.residual_history.size() == r.iterations + 1);
  CHECK(r.sign_history.size() == r.iterations + 1);
}

TEST_CASE("example 5 from (1,-1)") {
  SolverConfig cfg;
  cfg.x0 = Vector{1, -1};
  const auto r = gnm_solve(gen_example_k(5), cfg);
  CHECK(r.status == SolveStatus::Converged);
  CHECK(r.iterations == 2);
  CHECK_VEC_NEAR(r.iterates[1], (Vector{-6, -7}), 1e-12);
  CHECK_VEC_NEAR(r.x, (Vector{-2, -3}), 1e-12);
  CHECK(r.monotone_from_k1);
}

TEST_CASE("examples 3 and 4") {
  const auto r3 = gnm_solve(gen_example_k(3));
  CHECK(r3.iterations == 2);
  CHECK_VEC_NEAR(r3.x, (Vector{-2.24, -1.2}), 1e-12);
  SolverConfig cfg;
  cfg.x0 = Vector{1, -1};
  const auto r4 = gnm_solve(gen_example_k(4), cfg);
  CHECK(r4.iterations == 2);
  CHECK_VEC_NEAR(r4.x, (Vector{-4, -6}), 1e-12);
}

TEST_CASE("scalar problem already solved at x0") {
  const AveProblem p(DenseMatrix::from_rows({{2}}), Vector{1});
  SolverConfig cfg;
  cfg.x0 = Vector{1};
  const auto r = gnm_solve(p, cfg);
  CHECK(r.status == SolveStatus::Converged);
  CHECK(r.iterations == 0);
  CHECK(r.x == Vector{1});
  CHECK(r.residual == 0.0);
}

TEST_CASE("example 1, tridiagonal and dense paths agree") {
  const auto p = gen_example1(10);
  const auto rt = gnm_solve(p);
  const auto rd = gnm_solve(AveProblem(p.to_dense(), p.b()));
  CHECK(rt.status == SolveStatus::Converged);
  CHECK(rt.iterations <= 4);
  CHECK(rt.iterations == rd.iterations);
  CHECK_VEC_NEAR(rt.x, ref::kEx1Solution10, 1e-12);
  CHECK_VEC_NEAR(rd.x, ref::kEx1Solution10, 1e-12);
}

TEST_CASE("example 1 at n = 100 and 2000") {
  for (std::size_t n : {100u, 2000u}) {
    const auto r = gnm_solve(gen_example1(n));
    CHECK(r.status == SolveStatus::Converged);
    CHECK(r.residual <= 1e-12);
    CHECK(r.iterations <= 4);
  }
}

TEST_CASE("singular step is reported") {
  // A - D(x0) = [[1,1],[1,1]] - I... choose A = I + ones so that D = I gives a singular step
  const AveProblem p(DenseMatrix::from_rows({{2, 1}, {1, 2}}), Vector{1, 1});
  SolverConfig cfg;
  cfg.x0 = Vector{1, 1};
  const auto r = gnm_solve(p, cfg);
  CHECK(r.status == SolveStatus::SingularStep);
  CHECK(r.iterations == 0);
}

TEST_CASE("iteration cap") {
  // A = 0: x^{k+1} = -D(x^k) b flips forever for b = (1)
  const AveProblem p(DenseMatrix::from_rows({{0.0}}), Vector{1.0});
  SolverConfig cfg;
  cfg.x0 = Vector{1.0};
  cfg.max_iter = 5;
  const auto r = gnm_solve(p, cfg);
  CHECK(r.status == SolveStatus::IterationCapReached);
  CHECK(r.iterations == 5);
}

TEST_CASE("dimension checks") {
  SolverConfig cfg;
  cfg.x0 = Vector{1};
  CHECK_THROWS_AS(gnm_solve(gen_example_k(2), cfg), DimensionMismatch);
}

TEST_CASE("guard_d0") {
  const auto p = gen_example_k(4);
  const auto rep = diagnostics(p.dense());
  SolverConfig cfg;
  cfg.x0 = Vector{1, 1};
  const auto g = guard_d0(p, cfg, rep);
  CHECK(g.x0_adjusted);
  CHECK(*g.config.x0 == Vector{-1, 1});
  CHECK(g.v_dot_b == doctest::Approx(-20));
  CHECK(g.notes.size() == 1);

  cfg.x0 = Vector{1, -1};
  const auto h = guard_d0(p, cfg, rep);
  CHECK_FALSE(h.x0_adjusted);
  CHECK(*h.config.x0 == Vector{1, -1});
  CHECK(h.notes.empty());

  const AveProblem bad(p.dense(), Vector{1, 1});
  const auto w = guard_d0(bad, cfg, diagnostics(bad.dense()));
  CHECK(w.v_dot_b == doctest::Approx(2));
  CHECK_FALSE(w.notes.empty());
}

TEST_CASE("gnm applies the guard under 3b") {
  // default x0 = ones would give D = I
  const auto r = gnm_solve(gen_example_k(4));
  CHECK(r.iterates[0] == Vector{-1, 1});
  CHECK(r.status == SolveStatus::Converged);
  CHECK_VEC_NEAR(r.x, (Vector{-4, -6}), 1e-12);
}

TEST_CASE("frozen random instances") {
  const auto a = gnm_solve(gen_random_3a(5, 42));
  CHECK(a.iterations <= 12);
  CHECK_VEC_NEAR(a.x, ref::kRand3a_5_42_x, 1e-9);
  const auto b = gnm_solve(gen_random_3b(6, 5));
  CHECK(b.iterations <= 14);
  CHECK_VEC_NEAR(b.x, ref::kRand3b_6_5_x, 1e-7);
}

}
