#pragma once

// Dense/tridiagonal kernels and the spectral diagnostics used by the
// classifier and the solver.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ave/core.hpp"

namespace ave {

/// Relative pivot threshold shared by singularity detection and null-space rank.
inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kPowerTol = 1e-10;
inline constexpr std::size_t kPowerMaxIter = 10000;

/// Partial-pivoting LU with L (unit, strictly below the diagonal) and U packed
/// into one matrix. Row i of P*A is row perm[i] of A.
struct LuFactorization {
  DenseMatrix lu;
  std::vector<std::size_t> perm;
  bool singular = false;

  std::size_t size() const noexcept { return perm.size(); }
  DenseMatrix lower() const;
  DenseMatrix upper() const;
};

/// A pivot with magnitude <= rank_tol * max|entry| marks the factorization singular.
LuFactorization lu_factor(const DenseMatrix& m, double rank_tol = kDefaultRankTol);

/// Throws SingularSystem when f.singular.
Vector solve(const LuFactorization& f, std::span<const double> rhs);

/// Throws SingularSystem.
DenseMatrix inverse(const DenseMatrix& m, double rank_tol = kDefaultRankTol);

/// Thomas algorithm without pivoting. Throws SingularSystem on a zero pivot.
Vector tridiag_solve(const TridiagonalMatrix& t, std::span<const double> rhs);

struct PowerEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Largest singular value by power iteration on M^T M. Stops when successive
/// Rayleigh quotients agree to tol (relative). On max_iter the best estimate
/// is returned with converged == false.
PowerEstimate spectral_norm(const DenseMatrix& m, double tol = kPowerTol,
                            std::size_t max_iter = kPowerMaxIter);

/// Perron root of an entrywise nonnegative matrix.
///
/// The matrix is split into its strongly connected blocks (the spectral
/// radius is the largest block radius). Each irreducible block is iterated
/// from the all-ones vector after a positive diagonal shift, which makes it
/// primitive, and the Collatz-Wielandt bounds min/max (Mx)_i/x_i bracket the
/// root; iteration stops once the bracket is within tol (relative). Periodic
/// or defective matrices therefore converge instead of oscillating.
PowerEstimate spectral_radius_nonneg(const DenseMatrix& m, double tol = kPowerTol,
                                     std::size_t max_iter = kPowerMaxIter);

struct NullSpaceResult {
  std::size_t dimension = 0;
  /// Present iff dimension == 1. Scaled to max|v_i| = 1 with its
  /// largest-magnitude entry positive.
  std::optional<Vector> basis_vector;
  double rank_tolerance = kDefaultRankTol;
};

/// Kernel of M^T (vectors v with v^T M = 0) by row-echelon elimination with
/// partial pivoting; columns whose best pivot is below rank_tol * max|entry|
/// are free. Agrees with lu_factor(M^T, rank_tol).singular by construction.
NullSpaceResult null_space_left(const DenseMatrix& m, double rank_tol = kDefaultRankTol);

/// Strongly connected components of the graph with edge i->j iff
/// |m(i,j)| > zero_tol, i != j. Components come out in reverse topological order.
std::vector<std::vector<std::size_t>> strong_components(const DenseMatrix& m, double zero_tol);

bool is_irreducible(const DenseMatrix& m, double zero_tol);

/// Singular values by one-sided Jacobi, descending.
Vector singular_values(const DenseMatrix& m);

/// Minimum-norm least-squares solution of m x = rhs; singular values below
/// rank_tol * sigma_max are treated as zero.
Vector least_squares_min_norm(const DenseMatrix& m, std::span<const double> rhs,
                              double rank_tol = kDefaultRankTol);

}  // namespace ave
