#include "ave/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ave/linalg.hpp"

namespace ave {

namespace {

std::vector<std::int8_t> pattern_from_mask(std::uint32_t mask, std::size_t n) {
  std::vector<std::int8_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1u ? 1 : -1;
  return s;
}

bool sign_consistent(std::span<const double> x, std::span<const std::int8_t> s, double slack) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (s[i] * x[i] < -slack) return false;
  return true;
}

bool is_duplicate(const std::vector<Vector>& found, std::span<const double> x, double tol) {
  const double radius = tol * std::max(1.0, norm_inf(x));
  return std::any_of(found.begin(), found.end(), [&](const Vector& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) d = std::max(d, std::abs(y[i] - x[i]));
    return d <= radius;
  });
}

}  // namespace

const char* to_string(SolutionCount::Kind k) {
  switch (k) {
    case SolutionCount::Kind::Zero: return "Zero";
    case SolutionCount::Kind::One: return "One";
    case SolutionCount::Kind::FinitelyMany: return "FinitelyMany";
    case SolutionCount::Kind::ContinuumSuspected: return "ContinuumSuspected";
  }
  return "?";
}

std::optional<Vector> nonnegative_solution(const DenseMatrix& g, std::span<const double> rhs,
                                           double tol) {
  const std::size_t m = g.rows();
  const std::size_t nv = g.cols();
  if (rhs.size() != m) throw DimensionMismatch("nonnegative_solution: rhs length mismatch");
  const std::size_t width = nv + m + 1;
  const std::size_t rhs_col = nv + m;
  std::vector<double> t(m * width, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return t[i * width + j]; };
  std::vector<double> z(width, 0.0);  // reduced costs; z[rhs_col] = -objective
  std::vector<std::size_t> basis(m);

  double bscale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double sg = rhs[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < nv; ++j) at(i, j) = sg * g(i, j);
    at(i, nv + i) = 1.0;
    at(i, rhs_col) = sg * rhs[i];
    basis[i] = nv + i;
    bscale = std::max(bscale, std::abs(rhs[i]));
  }
  for (std::size_t j = 0; j < nv; ++j)
    for (std::size_t i = 0; i < m; ++i) z[j] -= at(i, j);
  for (std::size_t i = 0; i < m; ++i) z[rhs_col] -= at(i, rhs_col);

  const double piv_tol = 1e-11 * std::max(1.0, g.max_abs());
  const std::size_t max_pivots = 50 * (nv + m) + 100;
  for (std::size_t it = 0; it < max_pivots; ++it) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < rhs_col; ++j)
      if (z[j] < -piv_tol) {
        enter = j;
        break;
      }
    if (enter == width) break;

    std::size_t leave = m;
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double a = at(i, enter);
      if (a <= piv_tol) continue;
      const double ratio = at(i, rhs_col) / a;
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; phase one objective is bounded below

    const double piv = at(leave, enter);
    for (std::size_t j = 0; j < width; ++j) at(leave, j) /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = at(i, enter);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) at(i, j) -= f * at(leave, j);
    }
    const double f = z[enter];
    for (std::size_t j = 0; j < width; ++j) z[j] -= f * at(leave, j);
    basis[leave] = enter;
  }

  if (-z[rhs_col] > tol * bscale) return std::nullopt;
  Vector y(nv, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < nv) y[basis[i]] = std::max(0.0, at(i, rhs_col));
  return y;
}

SolutionSet enumerate_solutions(const AveProblem& p, const OracleOptions& opts) {
  const std::size_t n = p.size();
  if (n > kOracleMaxDimension)
    throw DimensionTooLarge("oracle enumerates 2^n sign patterns; n = " + std::to_string(n) +
                            " exceeds the limit of " + std::to_string(kOracleMaxDimension));
  const DenseMatrix a = p.to_dense();
  const Vector& b = p.b();
  const double bnorm = norm2(b);

  SolutionSet out;
  const std::uint32_t patterns = std::uint32_t{1} << n;
  for (std::uint32_t mask = 0; mask < patterns; ++mask) {
    const auto s = pattern_from_mask(mask, n);
    DenseMatrix m = a;
    for (std::size_t i = 0; i < n; ++i) m(i, i) -= s[i];
    const auto f = lu_factor(m, opts.rank_tol);

    if (!f.singular) {
      Vector x = solve(f, b);
      if (!sign_consistent(x, s, opts.dedup_tol)) continue;
      if (residual(p, x).norm > opts.verify_tol) continue;
      if (!is_duplicate(out.isolated, x, opts.dedup_tol)) out.isolated.push_back(std::move(x));
      continue;
    }

    SingularBranch br;
    br.pattern = s;
    const Vector xls = least_squares_min_norm(m, b, opts.rank_tol);
    Vector r = m * xls;
    for (std::size_t i = 0; i < n; ++i) r[i] -= b[i];
    if (norm2(r) <= opts.verify_tol * bnorm) {
      std::optional<Vector> cand;
      if (sign_consistent(xls, s, opts.dedup_tol)) {
        cand = xls;
      } else {
        // y = S x >= 0 with (A - S) S y = b
        DenseMatrix g = m;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) g(i, j) *= s[j];
        if (auto y = nonnegative_solution(g, b)) {
          Vector x(n);
          for (std::size_t i = 0; i < n; ++i) x[i] = s[i] * (*y)[i];
          cand = std::move(x);
        }
      }
      if (cand && residual(p, *cand).norm <= opts.verify_tol * std::max(1.0, bnorm)) {
        br.consistent = true;
        br.anchor = std::move(cand);
      }
    }
    out.singular_branches.push_back(std::move(br));
  }
  return out;
}

SolutionCount count_solutions(const SolutionSet& set) {
  SolutionCount c;
  c.isolated = set.isolated.size();
  const bool continuum = std::any_of(set.singular_branches.begin(), set.singular_branches.end(),
                                     [](const SingularBranch& b) { return b.consistent; });
  if (continuum)
    c.kind = SolutionCount::Kind::ContinuumSuspected;
  else if (c.isolated == 0)
    c.kind = SolutionCount::Kind::Zero;
  else if (c.isolated == 1)
    c.kind = SolutionCount::Kind::One;
  else
    c.kind = SolutionCount::Kind::FinitelyMany;
  return c;
}

SolutionCount count_solutions(const AveProblem& p, const OracleOptions& opts) {
  return count_solutions(enumerate_solutions(p, opts));
}

}  // namespace ave
