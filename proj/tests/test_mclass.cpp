#include <doctest.h>

#include "ave/linalg.hpp"
#include "ave/mclass.hpp"
#include "ave/problems.hpp"
#include "reference_values.hpp"
#include "support.hpp"

using namespace ave;

TEST_SUITE("mclass") {

TEST_CASE("is_z_matrix") {
  CHECK(is_z_matrix(gen_example1(4).to_dense()));
  CHECK_FALSE(is_z_matrix(DenseMatrix::from_rows({{1, -0.01}, {0.01, 1}})));
  CHECK(is_z_matrix(DenseMatrix::identity(3)));
  CHECK(is_z_matrix(DenseMatrix::from_rows({{1, 1e-13}, {0, 1}})));
}

TEST_CASE("is_m_matrix") {
  CHECK(is_m_matrix(DenseMatrix::from_rows({{0.5, -1.25}, {0, 0.5}})));
  CHECK_FALSE(is_m_matrix(DenseMatrix::from_rows({{2, -2}, {-2, 2}})));
  CHECK_FALSE(is_m_matrix(DenseMatrix::from_rows({{1, 2}, {0, 1}})));
  // Z-matrix with a negative inverse entry
  CHECK_FALSE(is_m_matrix(DenseMatrix::from_rows({{1, -2}, {-2, 1}})));
}

TEST_CASE("condition 3a") {
  CHECK(check_condition_3a(gen_example_k(2).dense()));
  CHECK(check_condition_3a(gen_example_k(3).dense()));
  CHECK_FALSE(check_condition_3a(gen_example_k(4).dense()));
  CHECK_FALSE(check_condition_3a(DenseMatrix::identity(2)));
}

TEST_CASE("condition 3b") {
  const auto c4 = check_condition_3b(gen_example_k(4).dense());
  CHECK(c4.satisfied);
  REQUIRE(c4.v);
  CHECK_VEC_NEAR(*c4.v, (Vector{1, 1}), 1e-12);

  const auto c5 = check_condition_3b(gen_example_k(5).dense());
  CHECK(c5.satisfied);
  REQUIRE(c5.v);
  CHECK_VEC_NEAR(*c5.v, (Vector{2, 1}), 1e-12);

  const auto c2 = check_condition_3b(gen_example_k(2).dense());
  CHECK_FALSE(c2.satisfied);
  CHECK_FALSE(c2.v);
  CHECK(c2.reason == "A - I is nonsingular");

  // A - I = 0 for n = 2: kernel of dimension 2
  const auto ci = check_condition_3b(DenseMatrix::identity(2));
  CHECK_FALSE(ci.satisfied);
  // reducible singular M-matrix: the surrogate does not recognize it
  const auto cr = check_condition_3b(DenseMatrix::from_rows({{1, -1}, {0, 2}}));
  CHECK_FALSE(cr.satisfied);
  // n = 1, A = [1]
  CHECK(check_condition_3b(DenseMatrix::from_rows({{1}})).satisfied);
}

TEST_CASE("diagnostics") {
  const auto d2 = diagnostics(gen_example_k(2).dense());
  CHECK(d2.satisfies_3a);
  REQUIRE(d2.norm_a_inv);
  CHECK(*d2.norm_a_inv == doctest::Approx(ref::kNormInvEx2).epsilon(1e-6));
  CHECK(*d2.rho_abs_a_inv == doctest::Approx(ref::kRhoAbsInvEx2).epsilon(1e-9));

  const auto d5 = diagnostics(gen_example_k(5).dense());
  CHECK(d5.satisfies_3b);
  CHECK_FALSE(d5.satisfies_3a);
  CHECK(d5.reason_3a == "A - I is singular");
  CHECK(*d5.norm_a_inv == doctest::Approx(ref::kNormInvEx5).epsilon(1e-9));
  CHECK(*d5.rho_abs_a_inv == doctest::Approx(ref::kRhoAbsInvEx5).epsilon(1e-9));
  CHECK_FALSE(d5.notes.empty());

  const auto r2 = diagnostics(DenseMatrix::from_rows({{1.5, -3}, {0, 1.5}}));
  CHECK(r2.satisfies_3a);
  CHECK(*r2.norm_a_inv == doctest::Approx(ref::kNormInvEx3).epsilon(1e-9));

  const auto nz = diagnostics(DenseMatrix::from_rows({{1, -0.01}, {0.01, 1}}));
  CHECK_FALSE(nz.is_z);
  CHECK(nz.reason_3a == "not a Z-matrix");

  // singular A: norm fields absent
  const auto sing = diagnostics(DenseMatrix(2, 2));
  CHECK_FALSE(sing.norm_a_inv);
  CHECK_FALSE(sing.rho_abs_a_inv);
}

}
