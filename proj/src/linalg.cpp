#include "ave/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ave {

namespace {

std::size_t argmax_abs_in_column(const DenseMatrix& a, std::size_t col, std::size_t from) {
  std::size_t p = from;
  double best = std::abs(a(from, col));
  for (std::size_t i = from + 1; i < a.rows(); ++i) {
    const double v = std::abs(a(i, col));
    if (v > best) {
      best = v;
      p = i;
    }
  }
  return p;
}

void swap_rows(DenseMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  auto ri = a.row(i);
  auto rj = a.row(j);
  std::swap_ranges(ri.begin(), ri.end(), rj.begin());
}

// Eliminates column `col` below row `pivot_row`, storing nothing in the zeroed slots.
void eliminate_below(DenseMatrix& a, std::size_t pivot_row, std::size_t col, bool keep_multipliers) {
  const auto pr = a.row(pivot_row);
  const double piv = pr[col];
  for (std::size_t i = pivot_row + 1; i < a.rows(); ++i) {
    auto ri = a.row(i);
    const double l = ri[col] / piv;
    ri[col] = keep_multipliers ? l : 0.0;
    if (l == 0.0) continue;
    for (std::size_t j = col + 1; j < a.cols(); ++j) ri[j] -= l * pr[j];
  }
}

bool below_threshold(double pivot, double threshold) { return !(std::abs(pivot) > threshold); }

// Iterative DFS post-order used by Kosaraju.
using Adjacency = std::vector<std::vector<std::size_t>>;

std::vector<std::size_t> finish_order(const Adjacency& adj) {
  const std::size_t n = adj.size();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    stack.emplace_back(s, 0);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < adj[v].size()) {
        const std::size_t w = adj[v][next++];
        if (!seen[w]) {
          seen[w] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  return order;
}

double perron_root_irreducible(const DenseMatrix& c, double tol, std::size_t max_iter,
                               std::size_t& iterations, bool& converged) {
  const std::size_t k = c.rows();
  if (k == 1) {
    converged = true;
    return c(0, 0);
  }
  const double shift = c.max_abs();
  Vector x(k, 1.0);
  double lo = 0.0;
  double hi = 0.0;
  converged = false;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    Vector y = c * x;
    lo = std::numeric_limits<double>::infinity();
    hi = 0.0;
    double ymax = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      y[i] += shift * x[i];
      const double ratio = y[i] / x[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      ymax = std::max(ymax, y[i]);
    }
    iterations += 1;
    if (hi - lo <= tol * (lo - shift)) {
      converged = true;
      break;
    }
    for (std::size_t i = 0; i < k; ++i) x[i] = y[i] / ymax;
  }
  return 0.5 * (lo + hi) - shift;
}

}  // namespace

// ---------------------------------------------------------------------------
// LU

DenseMatrix LuFactorization::lower() const {
  const std::size_t n = size();
  DenseMatrix l = DenseMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) l(i, j) = lu(i, j);
  return l;
}

DenseMatrix LuFactorization::upper() const {
  const std::size_t n = size();
  DenseMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) u(i, j) = lu(i, j);
  return u;
}

LuFactorization lu_factor(const DenseMatrix& m, double rank_tol) {
  if (!m.is_square()) throw DimensionMismatch("lu_factor: matrix is not square");
  const std::size_t n = m.rows();
  LuFactorization f{m, std::vector<std::size_t>(n), false};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  const double threshold = rank_tol * m.max_abs();
  DenseMatrix& a = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t p = argmax_abs_in_column(a, k, k);
    swap_rows(a, k, p);
    std::swap(f.perm[k], f.perm[p]);
    if (below_threshold(a(k, k), threshold)) {
      f.singular = true;
      for (std::size_t i = k + 1; i < n; ++i) a(i, k) = 0.0;
      continue;
    }
    eliminate_below(a, k, k, true);
  }
  return f;
}

Vector solve(const LuFactorization& f, std::span<const double> rhs) {
  const std::size_t n = f.size();
  if (rhs.size() != n)
    throw DimensionMismatch("solve: rhs has length " + std::to_string(rhs.size()) +
                            ", system has dimension " + std::to_string(n));
  if (f.singular) throw SingularSystem("solve: matrix is singular to working tolerance");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[f.perm[i]];
    auto li = f.lu.row(i);
    for (std::size_t j = 0; j < i; ++j) s -= li[j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    auto ui = f.lu.row(i);
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= ui[j] * x[j];
    x[i] = s / ui[i];
  }
  return x;
}

DenseMatrix inverse(const DenseMatrix& m, double rank_tol) {
  const auto f = lu_factor(m, rank_tol);
  if (f.singular) throw SingularSystem("inverse: matrix is singular to working tolerance");
  const std::size_t n = m.rows();
  DenseMatrix inv(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector col = solve(f, e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Thomas

Vector tridiag_solve(const TridiagonalMatrix& t, std::span<const double> rhs) {
  const std::size_t n = t.size();
  if (rhs.size() != n) throw DimensionMismatch("tridiag_solve: rhs length mismatch");
  if (n == 0) return {};
  const auto& a = t.sub();
  const auto& b = t.main();
  const auto& c = t.super();

  Vector c_prime(n, 0.0);
  Vector x(n);
  double piv = b[0];
  if (piv == 0.0) throw SingularSystem("tridiag_solve: zero pivot at row 0");
  if (n > 1) c_prime[0] = c[0] / piv;
  x[0] = rhs[0] / piv;

  // forward sweep
  for (std::size_t i = 1; i < n; ++i) {
    piv = b[i] - a[i - 1] * c_prime[i - 1];
    if (piv == 0.0 || !std::isfinite(piv))
      throw SingularSystem("tridiag_solve: zero pivot at row " + std::to_string(i));
    if (i + 1 < n) c_prime[i] = c[i] / piv;
    x[i] = (rhs[i] - a[i - 1] * x[i - 1]) / piv;
  }
  // back substitution
  for (std::size_t i = n - 1; i > 0; --i) x[i - 1] -= c_prime[i - 1] * x[i];
  return x;
}

// ---------------------------------------------------------------------------
// Spectral diagnostics

PowerEstimate spectral_norm(const DenseMatrix& m, double tol, std::size_t max_iter) {
  PowerEstimate est;
  const std::size_t n = m.cols();
  if (n == 0 || m.rows() == 0) {
    est.converged = true;
    return est;
  }
  const DenseMatrix mt = m.transpose();
  // Deterministic start with no special alignment to any coordinate structure.
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double frac = std::fmod(0.6180339887498949 * static_cast<double>(i + 1), 1.0);
    x[i] = 0.5 + frac;
  }
  const double nx = norm2(x);
  for (double& v : x) v /= nx;

  double prev = -1.0;
  double lambda = 0.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    const Vector y = m * x;
    const double ny = norm2(y);
    lambda = ny * ny;
    Vector z = mt * y;
    const double nz = norm2(z);
    est.iterations = it;
    if (nz == 0.0) {
      est.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / nz;
    if (prev >= 0.0 && std::abs(lambda - prev) <= tol * lambda) {
      est.converged = true;
      break;
    }
    prev = lambda;
  }
  est.value = std::sqrt(lambda);
  return est;
}

PowerEstimate spectral_radius_nonneg(const DenseMatrix& m, double tol, std::size_t max_iter) {
  if (!m.is_square()) throw DimensionMismatch("spectral_radius_nonneg: matrix is not square");
  for (double v : m.entries())
    if (v < 0.0) throw Error("spectral_radius_nonneg: matrix has a negative entry");
  PowerEstimate est;
  est.converged = true;
  for (const auto& comp : strong_components(m, 0.0)) {
    const std::size_t k = comp.size();
    DenseMatrix block(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) block(i, j) = m(comp[i], comp[j]);
    bool ok = false;
    const double r = perron_root_irreducible(block, tol, max_iter, est.iterations, ok);
    est.value = std::max(est.value, r);
    est.converged = est.converged && ok;
  }
  return est;
}

// ---------------------------------------------------------------------------
// Left null space

NullSpaceResult null_space_left(const DenseMatrix& m, double rank_tol) {
  if (!m.is_square()) throw DimensionMismatch("null_space_left: matrix is not square");
  const std::size_t n = m.rows();
  DenseMatrix a = m.transpose();
  const double threshold = rank_tol * m.max_abs();

  std::vector<std::size_t> pivot_col;
  std::vector<std::size_t> free_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (r == n) {
      free_cols.push_back(c);
      continue;
    }
    const std::size_t p = argmax_abs_in_column(a, c, r);
    swap_rows(a, r, p);
    if (below_threshold(a(r, c), threshold)) {
      free_cols.push_back(c);
      continue;
    }
    eliminate_below(a, r, c, false);
    pivot_col.push_back(c);
    ++r;
  }

  NullSpaceResult res;
  res.rank_tolerance = rank_tol;
  res.dimension = n - r;
  if (res.dimension != 1) return res;

  Vector v(n, 0.0);
  v[free_cols.front()] = 1.0;
  for (std::size_t row = r; row-- > 0;) {
    const std::size_t c = pivot_col[row];
    auto ar = a.row(row);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != c) s += ar[j] * v[j];
    v[c] = -s / ar[c];
  }
  std::size_t imax = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  const double scale = v[imax];
  for (double& x : v) x /= scale;
  res.basis_vector = std::move(v);
  return res;
}

// ---------------------------------------------------------------------------
// Graph structure

std::vector<std::vector<std::size_t>> strong_components(const DenseMatrix& m, double zero_tol) {
  if (!m.is_square()) throw DimensionMismatch("strong_components: matrix is not square");
  const std::size_t n = m.rows();
  Adjacency fwd(n), rev(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && std::abs(m(i, j)) > zero_tol) {
        fwd[i].push_back(j);
        rev[j].push_back(i);
      }

  const auto order = finish_order(fwd);
  std::vector<char> assigned(n, 0);
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> stack;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (assigned[*it]) continue;
    std::vector<std::size_t> comp;
    assigned[*it] = 1;
    stack.push_back(*it);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (std::size_t w : rev[v])
        if (!assigned[w]) {
          assigned[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_irreducible(const DenseMatrix& m, double zero_tol) {
  if (!m.is_square()) throw DimensionMismatch("is_irreducible: matrix is not square");
  if (m.rows() <= 1) return true;
  return strong_components(m, zero_tol).size() == 1;
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD

namespace {

struct JacobiSvd {
  std::vector<Vector> u;  // columns of M V, i.e. sigma_j * u_j
  std::vector<Vector> v;  // columns of V
  Vector sigma;
};

JacobiSvd jacobi_svd(const DenseMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  JacobiSvd s;
  s.u.assign(cols, Vector(rows));
  s.v.assign(cols, Vector(cols, 0.0));
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) s.u[j][i] = m(i, j);
    s.v[j][j] = 1.0;
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        auto& up = s.u[p];
        auto& uq = s.u[q];
        const double alpha = dot(up, up);
        const double beta = dot(uq, uq);
        const double gamma = dot(up, uq);
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double sn = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const double a = up[i], b = uq[i];
          up[i] = c * a - sn * b;
          uq[i] = sn * a + c * b;
        }
        auto& vp = s.v[p];
        auto& vq = s.v[q];
        for (std::size_t i = 0; i < cols; ++i) {
          const double a = vp[i], b = vq[i];
          vp[i] = c * a - sn * b;
          vq[i] = sn * a + c * b;
        }
      }
    }
    if (!rotated) break;
  }
  s.sigma.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) s.sigma[j] = norm2(s.u[j]);
  return s;
}

}  // namespace

Vector singular_values(const DenseMatrix& m) {
  Vector sv = jacobi_svd(m).sigma;
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

Vector least_squares_min_norm(const DenseMatrix& m, std::span<const double> rhs, double rank_tol) {
  if (rhs.size() != m.rows()) throw DimensionMismatch("least squares: rhs length mismatch");
  const auto s = jacobi_svd(m);
  const double smax = s.sigma.empty() ? 0.0 : *std::max_element(s.sigma.begin(), s.sigma.end());
  Vector x(m.cols(), 0.0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const double sj = s.sigma[j];
    if (!(sj > rank_tol * smax)) continue;
    const double coef = dot(s.u[j], rhs) / (sj * sj);
    for (std::size_t i = 0; i < m.cols(); ++i) x[i] += coef * s.v[j][i];
  }
  return x;
}

}  // namespace ave
