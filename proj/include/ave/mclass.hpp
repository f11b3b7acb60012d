#pragma once

// Z-matrix / M-matrix classification and the two termination conditions
// for the generalized Newton method:
//   (3a)  A - I is a (nonsingular) M-matrix;
//   (3b)  A - I is singular with left kernel span(v), v > 0, and A - I + D is
//         an M-matrix for every nonzero nonnegative diagonal D.

#include <optional>
#include <string>
#include <vector>

#include "ave/core.hpp"
#include "ave/linalg.hpp"

namespace ave {

struct Tolerances {
  double zero_tol = 1e-12;   ///< absolute slack for "off-diagonal <= 0" and graph edges
  double rank_tol = kDefaultRankTol;
  double entry_tol = 1e-9;   ///< inverse entries >= -entry_tol * max|inverse|
  double shift = 1e-8;       ///< (3b) probe: A - I + shift*max|A - I| * I
};

bool is_z_matrix(const DenseMatrix& m, double zero_tol = Tolerances{}.zero_tol);

/// Z-matrix whose inverse exists and is entrywise nonnegative.
bool is_m_matrix(const DenseMatrix& m, const Tolerances& tols = {});

bool check_condition_3a(const DenseMatrix& a, const Tolerances& tols = {});

struct Condition3b {
  bool satisfied = false;
  /// Positive left null vector of A - I, scaled so min(v) == 1.
  std::optional<Vector> v;
  /// Why the check failed (empty when satisfied).
  std::string reason;
};

/// Tests the sufficient surrogate "A - I is a singular irreducible M-matrix":
/// Z-matrix, one-dimensional left kernel spanned by a positive v, irreducible,
/// and A - I + eps*I an M-matrix.
Condition3b check_condition_3b(const DenseMatrix& a, const Tolerances& tols = {});

struct ConditionReport {
  bool is_z = false;  ///< for A - I
  bool satisfies_3a = false;
  bool satisfies_3b = false;
  std::optional<Vector> v;
  std::optional<double> norm_a_inv;
  std::optional<double> rho_abs_a_inv;
  std::string reason_3a;  ///< empty when 3a holds
  std::string reason_3b;
  std::vector<std::string> notes;
};

ConditionReport diagnostics(const DenseMatrix& a, const Tolerances& tols = {});

}  // namespace ave
