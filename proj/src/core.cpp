#include "ave/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ave {

namespace {

void require_finite(std::span<const double> x, const char* what) {
  if (!all_finite(x)) throw NonFiniteValue(std::string(what) + " contains NaN or Inf");
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch(std::string("shape mismatch in matrix ") + op);
}

}  // namespace

// ---------------------------------------------------------------------------

double norm2(std::span<const double> x) {
  // scaled to survive large iterates
  double scale = norm_inf(x);
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double sum = 0.0;
  for (double v : x) {
    double t = v / scale;
    sum += t * t;
  }
  return scale * std::sqrt(sum);
}

double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

bool all_finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

// ---------------------------------------------------------------------------
// DenseMatrix

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {
  if (!std::isfinite(fill)) throw NonFiniteValue("matrix fill value is not finite");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_)
    throw DimensionMismatch("matrix entry count " + std::to_string(entries_.size()) +
                            " does not match " + std::to_string(rows_) + "x" +
                            std::to_string(cols_));
  require_finite(entries_, "matrix");
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> e;
  e.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("ragged rows in matrix literal");
    e.insert(e.end(), row.begin(), row.end());
  }
  return DenseMatrix(r, c, std::move(e));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
  require_finite(d, "diagonal");
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

double DenseMatrix::max_abs() const noexcept { return norm_inf(entries_); }

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "addition");
  std::vector<double> e(a.entries().begin(), a.entries().end());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] += b.entries()[k];
  return DenseMatrix(a.rows(), a.cols(), std::move(e));
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "subtraction");
  std::vector<double> e(a.entries().begin(), a.entries().end());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] -= b.entries()[k];
  return DenseMatrix(a.rows(), a.cols(), std::move(e));
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
  std::vector<double> e(a.entries().begin(), a.entries().end());
  for (double& v : e) v *= s;
  return DenseMatrix(a.rows(), a.cols(), std::move(e));
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Vector operator*(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector product: length mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ai = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix add_identity(const DenseMatrix& a, double s) {
  if (!a.is_square()) throw DimensionMismatch("add_identity: matrix is not square");
  DenseMatrix m = a;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += s;
  return m;
}

// ---------------------------------------------------------------------------
// TridiagonalMatrix

TridiagonalMatrix::TridiagonalMatrix(Vector sub, Vector main, Vector super)
    : sub_(std::move(sub)), main_(std::move(main)), super_(std::move(super)) {
  const std::size_t n = main_.size();
  const std::size_t off = n == 0 ? 0 : n - 1;
  if (sub_.size() != off || super_.size() != off)
    throw DimensionMismatch("tridiagonal: off-diagonals must have length n-1");
  require_finite(sub_, "sub-diagonal");
  require_finite(main_, "main diagonal");
  require_finite(super_, "super-diagonal");
}

TridiagonalMatrix TridiagonalMatrix::toeplitz(std::size_t n, double sub, double main,
                                              double super) {
  const std::size_t off = n == 0 ? 0 : n - 1;
  return TridiagonalMatrix(Vector(off, sub), Vector(n, main), Vector(off, super));
}

Vector TridiagonalMatrix::multiply(std::span<const double> x) const {
  const std::size_t n = size();
  if (x.size() != n) throw DimensionMismatch("tridiagonal product: length mismatch");
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = main_[i] * x[i];
    if (i > 0) s += sub_[i - 1] * x[i - 1];
    if (i + 1 < n) s += super_[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

DenseMatrix TridiagonalMatrix::to_dense() const {
  const std::size_t n = size();
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = main_[i];
    if (i + 1 < n) {
      m(i + 1, i) = sub_[i];
      m(i, i + 1) = super_[i];
    }
  }
  return m;
}

TridiagonalMatrix TridiagonalMatrix::minus_diagonal(std::span<const double> d) const {
  if (d.size() != size()) throw DimensionMismatch("minus_diagonal: length mismatch");
  Vector main = main_;
  for (std::size_t i = 0; i < main.size(); ++i) main[i] -= d[i];
  return TridiagonalMatrix(sub_, std::move(main), super_);
}

// ---------------------------------------------------------------------------
// AveProblem

AveProblem::AveProblem(DenseMatrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
  const auto& m = std::get<DenseMatrix>(a_);
  if (!m.is_square()) throw DimensionMismatch("AVE matrix must be square");
  if (m.rows() != b_.size())
    throw DimensionMismatch("AVE matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + " but b has length " +
                            std::to_string(b_.size()));
  if (b_.empty()) throw DimensionMismatch("AVE must have dimension >= 1");
  require_finite(b_, "right-hand side");
}

AveProblem::AveProblem(TridiagonalMatrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
  const auto& t = std::get<TridiagonalMatrix>(a_);
  if (t.size() != b_.size())
    throw DimensionMismatch("tridiagonal AVE: b has length " + std::to_string(b_.size()) +
                            ", expected " + std::to_string(t.size()));
  if (b_.empty()) throw DimensionMismatch("AVE must have dimension >= 1");
  require_finite(b_, "right-hand side");
}

const DenseMatrix& AveProblem::dense() const {
  if (is_tridiagonal()) throw Error("problem is stored tridiagonally");
  return std::get<DenseMatrix>(a_);
}

const TridiagonalMatrix& AveProblem::tridiagonal() const {
  if (!is_tridiagonal()) throw Error("problem is stored densely");
  return std::get<TridiagonalMatrix>(a_);
}

DenseMatrix AveProblem::to_dense() const {
  if (is_tridiagonal()) return std::get<TridiagonalMatrix>(a_).to_dense();
  return std::get<DenseMatrix>(a_);
}

Vector AveProblem::apply(std::span<const double> x) const {
  if (is_tridiagonal()) return std::get<TridiagonalMatrix>(a_).multiply(x);
  return std::get<DenseMatrix>(a_) * x;
}

// ---------------------------------------------------------------------------
// SignDiagonal

SignDiagonal::SignDiagonal(std::vector<std::int8_t> diag) : diag_(std::move(diag)) {
  for (auto d : diag_)
    if (d < -1 || d > 1) throw Error("sign diagonal entries must be -1, 0 or 1");
}

bool SignDiagonal::is_identity() const noexcept {
  return std::all_of(diag_.begin(), diag_.end(), [](std::int8_t d) { return d == 1; });
}

Vector SignDiagonal::as_vector() const { return Vector(diag_.begin(), diag_.end()); }

Vector SignDiagonal::apply(std::span<const double> x) const {
  if (x.size() != diag_.size()) throw DimensionMismatch("sign diagonal: length mismatch");
  Vector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = diag_[i] * x[i];
  return y;
}

bool SignDiagonal::dominates(const SignDiagonal& other) const {
  if (other.size() != size()) throw DimensionMismatch("sign diagonal: length mismatch");
  for (std::size_t i = 0; i < diag_.size(); ++i)
    if (diag_[i] < other.diag_[i]) return false;
  return true;
}

std::string SignDiagonal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < diag_.size(); ++i) {
    if (i) s += ',';
    s += diag_[i] > 0 ? '+' : diag_[i] < 0 ? '-' : '0';
  }
  return s + ")";
}

SignDiagonal sign_diagonal(std::span<const double> x) {
  require_finite(x, "sign_diagonal input");
  std::vector<std::int8_t> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] > 0.0 ? 1 : x[i] < 0.0 ? -1 : 0;
  return SignDiagonal(std::move(d));
}

Residual residual(const AveProblem& p, std::span<const double> x) {
  if (x.size() != p.size())
    throw DimensionMismatch("residual: x has length " + std::to_string(x.size()) +
                            ", problem has dimension " + std::to_string(p.size()));
  Residual res;
  res.r = p.apply(x);
  for (std::size_t i = 0; i < x.size(); ++i) res.r[i] -= std::abs(x[i]) + p.b()[i];
  res.norm = norm2(res.r);
  return res;
}

DenseMatrix abs_matrix(const DenseMatrix& m) {
  std::vector<double> e(m.entries().begin(), m.entries().end());
  for (double& v : e) v = std::abs(v);
  return DenseMatrix(m.rows(), m.cols(), std::move(e));
}

}  // namespace ave
