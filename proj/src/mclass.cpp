#include "ave/mclass.hpp"

#include <algorithm>
#include <cmath>

namespace ave {

namespace {

DenseMatrix minus_identity(const DenseMatrix& a) { return add_identity(a, -1.0); }

enum class MFailure { none, not_z, singular, negative_inverse };

MFailure m_matrix_failure(const DenseMatrix& m, const Tolerances& tols) {
  if (!is_z_matrix(m, tols.zero_tol)) return MFailure::not_z;
  const auto f = lu_factor(m, tols.rank_tol);
  if (f.singular) return MFailure::singular;
  const std::size_t n = m.rows();
  DenseMatrix inv(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector col = solve(f, e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  const double floor = -tols.entry_tol * inv.max_abs();
  const auto entries = inv.entries();
  const bool nonneg =
      std::all_of(entries.begin(), entries.end(), [floor](double v) { return v >= floor; });
  return nonneg ? MFailure::none : MFailure::negative_inverse;
}

std::string describe(MFailure f) {
  switch (f) {
    case MFailure::none: return {};
    case MFailure::not_z: return "not a Z-matrix";
    case MFailure::singular: return "A - I is singular";
    case MFailure::negative_inverse: return "(A - I)^-1 has a negative entry";
  }
  return {};
}

}  // namespace

bool is_z_matrix(const DenseMatrix& m, double zero_tol) {
  if (!m.is_square()) throw DimensionMismatch("is_z_matrix: matrix is not square");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) > zero_tol) return false;
  return true;
}

bool is_m_matrix(const DenseMatrix& m, const Tolerances& tols) {
  return m_matrix_failure(m, tols) == MFailure::none;
}

bool check_condition_3a(const DenseMatrix& a, const Tolerances& tols) {
  return is_m_matrix(minus_identity(a), tols);
}

Condition3b check_condition_3b(const DenseMatrix& a, const Tolerances& tols) {
  Condition3b out;
  const DenseMatrix m = minus_identity(a);
  if (!is_z_matrix(m, tols.zero_tol)) {
    out.reason = "A - I is not a Z-matrix";
    return out;
  }
  const auto ns = null_space_left(m, tols.rank_tol);
  if (ns.dimension == 0) {
    out.reason = "A - I is nonsingular";
    return out;
  }
  if (ns.dimension > 1) {
    out.reason = "left kernel of A - I has dimension " + std::to_string(ns.dimension);
    return out;
  }
  if (!is_irreducible(m, tols.zero_tol)) {
    out.reason = "A - I is reducible";
    return out;
  }
  Vector v = *ns.basis_vector;
  const double vmin = *std::min_element(v.begin(), v.end());
  if (!(vmin > tols.zero_tol)) {
    out.reason = "left null vector of A - I is not strictly positive";
    return out;
  }
  const double scale = m.max_abs();
  const double eps = tols.shift * (scale > 0.0 ? scale : 1.0);
  if (!is_m_matrix(add_identity(m, eps), tols)) {
    out.reason = "A - I + eps*I is not an M-matrix";
    return out;
  }
  for (double& x : v) x /= vmin;
  out.satisfied = true;
  out.v = std::move(v);
  return out;
}

ConditionReport diagnostics(const DenseMatrix& a, const Tolerances& tols) {
  if (!a.is_square()) throw DimensionMismatch("diagnostics: matrix is not square");
  ConditionReport rep;
  const DenseMatrix m = minus_identity(a);
  rep.is_z = is_z_matrix(m, tols.zero_tol);

  const MFailure fa = m_matrix_failure(m, tols);
  rep.satisfies_3a = fa == MFailure::none;
  rep.reason_3a = describe(fa);

  const auto c3b = check_condition_3b(a, tols);
  rep.satisfies_3b = c3b.satisfied;
  rep.reason_3b = c3b.reason;
  rep.v = c3b.v;
  if (rep.satisfies_3b)
    rep.notes.emplace_back(
        "3b verified via the sufficient criterion 'A - I is a singular irreducible M-matrix'; "
        "reducible matrices satisfying 3b are not recognized");

  const auto f = lu_factor(a, tols.rank_tol);
  if (f.singular) {
    rep.notes.emplace_back("A is singular; norm diagnostics omitted");
    return rep;
  }
  const DenseMatrix inv = inverse(a, tols.rank_tol);
  const auto sn = spectral_norm(inv);
  rep.norm_a_inv = sn.value;
  if (!sn.converged) rep.notes.emplace_back("power iteration for ||A^-1|| did not converge");
  const auto sr = spectral_radius_nonneg(abs_matrix(inv));
  rep.rho_abs_a_inv = sr.value;
  if (!sr.converged) rep.notes.emplace_back("power iteration for rho(|A^-1|) did not converge");
  // power iteration converges from below; keep a margin so ||A^-1|| == 1 is not reported as < 1
  if (*rep.norm_a_inv < 1.0 - 1e-6)
    rep.notes.emplace_back("||A^-1|| < 1: uniquely solvable for every b");
  return rep;
}

}  // namespace ave
