#include <doctest.h>

#include <cmath>

#include "ave/linalg.hpp"
#include "ave/problems.hpp"
#include "reference_values.hpp"
#include "support.hpp"

using namespace ave;

namespace {

DenseMatrix permutation_rows(const DenseMatrix& a, const std::vector<std::size_t>& perm) {
  DenseMatrix p(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) p(i, j) = a(perm[i], j);
  return p;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("lu_factor small cases") {
  const auto f = lu_factor(DenseMatrix::identity(3));
  CHECK_FALSE(f.singular);
  CHECK(f.lower() == DenseMatrix::identity(3));
  CHECK(f.upper() == DenseMatrix::identity(3));
  CHECK(f.perm == std::vector<std::size_t>{0, 1, 2});

  CHECK(lu_factor(DenseMatrix::from_rows({{2, -2}, {-2, 2}})).singular);

  const auto g = lu_factor(DenseMatrix::from_rows({{0.5, -1.25}, {0, 0.5}}));
  CHECK_FALSE(g.singular);
  CHECK_VEC_NEAR(solve(g, Vector{4, 16}), (Vector{88, 32}), 1e-12);
}

TEST_CASE("lu_factor reproduces PA = LU") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto a = testing::random_matrix(rng, n, -5, 5);
    const auto f = lu_factor(a);
    REQUIRE_FALSE(f.singular);
    CHECK_MAT_NEAR(f.lower() * f.upper(), permutation_rows(a, f.perm), 1e-12 * n * 5);
    const auto l = f.lower();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(l(i, j)) <= 1.0);
  }
}

TEST_CASE("solve") {
  CHECK(solve(lu_factor(DenseMatrix::identity(3)), Vector{1, 2, 3}) == Vector{1, 2, 3});
  CHECK_VEC_NEAR(solve(lu_factor(DenseMatrix::from_rows({{2, -1}, {-4, 4}})), Vector{-5, -4}),
                 (Vector{-6, -7}), 1e-14);
  CHECK_VEC_NEAR(solve(lu_factor(DenseMatrix::from_rows({{4, -1}, {-4, 4}})), Vector{-5, -4}),
                 (Vector{-2, -3}), 1e-14);
  CHECK_THROWS_AS(solve(lu_factor(DenseMatrix::from_rows({{2, -2}, {-2, 2}})), Vector{1, 1}),
                  SingularSystem);
  CHECK_THROWS_AS(solve(lu_factor(DenseMatrix::identity(2)), Vector{1}), DimensionMismatch);
}

TEST_CASE("inverse") {
  CHECK_MAT_NEAR(inverse(2.0 * DenseMatrix::identity(3)), 0.5 * DenseMatrix::identity(3), 0.0);
  CHECK_MAT_NEAR(inverse(DenseMatrix::from_rows({{0.5, -1.25}, {0, 0.5}})),
                 DenseMatrix::from_rows({{2, 5}, {0, 2}}), 1e-14);
  const auto r = inverse(DenseMatrix::from_rows({{1, -0.01}, {0.01, 1}}));
  CHECK(r(1, 0) < 0.0);
  CHECK_THROWS_AS(inverse(DenseMatrix(2, 2)), SingularSystem);
}

TEST_CASE("tridiag_solve") {
  CHECK(tridiag_solve(TridiagonalMatrix({}, {7}, {}), Vector{14}) == Vector{2});
  CHECK_VEC_NEAR(tridiag_solve(TridiagonalMatrix::toeplitz(2, -2, 7, -2), Vector{5, 5}),
                 (Vector{1, 1}), 1e-15);
  CHECK_THROWS_AS(tridiag_solve(TridiagonalMatrix({1}, {0, 1}, {1}), Vector{1, 1}), SingularSystem);

  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial;
    Vector sub(n - 1), main(n), sup(n - 1);
    for (auto& v : sub) v = rng.uniform(-1, 1);
    for (auto& v : sup) v = rng.uniform(-1, 1);
    for (auto& v : main) v = rng.uniform(2.5, 4);
    const TridiagonalMatrix t(sub, main, sup);
    const Vector rhs = testing::random_vector(rng, n, -3, 3);
    CHECK_VEC_NEAR(tridiag_solve(t, rhs), solve(lu_factor(t.to_dense()), rhs), 1e-12);
  }
}

TEST_CASE("spectral_norm") {
  CHECK(spectral_norm(inverse(gen_example_k(3).dense())).value ==
        doctest::Approx(ref::kNormInvEx3).epsilon(1e-9));
  CHECK(spectral_norm(inverse(gen_example_k(5).dense())).value ==
        doctest::Approx(ref::kNormInvEx5).epsilon(1e-9));
  CHECK(spectral_norm(DenseMatrix::identity(4)).value == doctest::Approx(1.0));
  CHECK(spectral_norm(DenseMatrix(3, 3)).value == 0.0);
}

TEST_CASE("spectral_norm properties") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const auto m = testing::random_matrix(rng, n, -2, 2);
    const double s = spectral_norm(m).value;
    CHECK(spectral_norm(m.transpose()).value == doctest::Approx(s).epsilon(1e-8));
    CHECK(spectral_norm(-3.0 * m).value == doctest::Approx(3.0 * s).epsilon(1e-8));
    // compare with the Jacobi SVD
    CHECK(s == doctest::Approx(singular_values(m).front()).epsilon(1e-8));
    const auto p = abs_matrix(m);
    CHECK(spectral_radius_nonneg(p).value <= spectral_norm(p).value * (1 + 1e-8));
  }
}

TEST_CASE("spectral_radius_nonneg") {
  const auto inv2 = abs_matrix(inverse(gen_example_k(2).dense()));
  CHECK(spectral_radius_nonneg(inv2).value == doctest::Approx(ref::kRhoAbsInvEx2).epsilon(1e-9));
  CHECK(spectral_radius_nonneg(DenseMatrix::identity(3)).value == doctest::Approx(1.0));
  const auto perm = DenseMatrix::from_rows({{0, 1}, {1, 0}});
  const auto r = spectral_radius_nonneg(perm);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(spectral_radius_nonneg(DenseMatrix(2, 2)).value == 0.0);
  // defective block: Jordan-like upper triangular
  CHECK(spectral_radius_nonneg(DenseMatrix::from_rows({{2, 1}, {0, 2}})).value ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK_THROWS_AS(spectral_radius_nonneg(DenseMatrix::from_rows({{1, -1}, {0, 1}})), Error);
}

TEST_CASE("null_space_left") {
  const auto r4 = null_space_left(DenseMatrix::from_rows({{2, -2}, {-2, 2}}));
  CHECK(r4.dimension == 1);
  REQUIRE(r4.basis_vector);
  CHECK_VEC_NEAR(*r4.basis_vector, (Vector{1, 1}), 1e-12);

  const auto r5 = null_space_left(DenseMatrix::from_rows({{2, -1}, {-4, 2}}));
  CHECK(r5.dimension == 1);
  REQUIRE(r5.basis_vector);
  CHECK_VEC_NEAR(*r5.basis_vector, (Vector{1, 0.5}), 1e-12);

  CHECK(null_space_left(DenseMatrix::from_rows({{0.5, -1.25}, {0, 0.5}})).dimension == 0);
  const auto z = null_space_left(DenseMatrix(3, 3));
  CHECK(z.dimension == 3);
  CHECK_FALSE(z.basis_vector);
}

TEST_CASE("null_space_left agrees with lu_factor on the transpose") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 5;
    auto m = testing::random_matrix(rng, n, -1, 1);
    if (trial % 2 == 0) {
      // force a rank deficiency: last row = combination of the first two
      for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = 0.5 * m(0, j) - 2.0 * m(1 % n, j);
    }
    const auto ns = null_space_left(m);
    CHECK((ns.dimension > 0) == lu_factor(m.transpose()).singular);
    if (ns.basis_vector) CHECK(norm_inf(m.transpose() * *ns.basis_vector) <= 1e-10);
  }
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(DenseMatrix::from_rows({{2, -2}, {-2, 2}}), 1e-12));
  CHECK_FALSE(is_irreducible(DenseMatrix::identity(3), 1e-12));
  CHECK_FALSE(is_irreducible(DenseMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}), 1e-12));
  CHECK(is_irreducible(DenseMatrix::from_rows({{5}}), 1e-12));
  const auto sc = strong_components(DenseMatrix::from_rows({{0, 1, 0}, {1, 0, 0}, {1, 0, 0}}), 0.0);
  CHECK(sc.size() == 2);
}

TEST_CASE("least squares") {
  const auto u = least_squares_min_norm(DenseMatrix::from_rows({{2, -2}, {-2, 2}}), Vector{1, -1});
  CHECK_VEC_NEAR(u, (Vector{0.25, -0.25}), 1e-12);
  const auto sv = singular_values(DenseMatrix::from_rows({{3, 0}, {0, -4}}));
  CHECK_VEC_NEAR(sv, (Vector{4, 3}), 1e-14);
}

}
