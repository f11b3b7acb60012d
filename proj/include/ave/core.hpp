#pragma once

// Domain types for the absolute value equation  A x - |x| = b.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ave {

using Vector = std::vector<double>;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Matrices

/// Row-major dense matrix with finite entries.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {entries_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) noexcept { return {entries_.data() + i * cols_, cols_}; }
  std::span<const double> entries() const noexcept { return entries_; }

  double max_abs() const noexcept;
  DenseMatrix transpose() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, std::span<const double> x);

/// a + s*I for square a.
DenseMatrix add_identity(const DenseMatrix& a, double s);

/// Tridiagonal matrix stored by its three diagonals.
class TridiagonalMatrix {
 public:
  TridiagonalMatrix() = default;
  TridiagonalMatrix(Vector sub, Vector main, Vector super);
  /// Constant-coefficient (Toeplitz) tridiagonal matrix.
  static TridiagonalMatrix toeplitz(std::size_t n, double sub, double main, double super);

  std::size_t size() const noexcept { return main_.size(); }
  const Vector& sub() const noexcept { return sub_; }
  const Vector& main() const noexcept { return main_; }
  const Vector& super() const noexcept { return super_; }

  Vector multiply(std::span<const double> x) const;
  DenseMatrix to_dense() const;
  /// Same off-diagonals, main diagonal replaced by main - d.
  TridiagonalMatrix minus_diagonal(std::span<const double> d) const;

  friend bool operator==(const TridiagonalMatrix&, const TridiagonalMatrix&) = default;

 private:
  Vector sub_;
  Vector main_;
  Vector super_;
};

// ---------------------------------------------------------------------------
// Problem

/// A x - |x| = b with square A, stored either dense or tridiagonal.
class AveProblem {
 public:
  AveProblem(DenseMatrix a, Vector b);
  AveProblem(TridiagonalMatrix a, Vector b);

  std::size_t size() const noexcept { return b_.size(); }
  const Vector& b() const noexcept { return b_; }

  bool is_tridiagonal() const noexcept { return std::holds_alternative<TridiagonalMatrix>(a_); }
  /// Throws Error when the problem is stored tridiagonally.
  const DenseMatrix& dense() const;
  const TridiagonalMatrix& tridiagonal() const;
  /// Materializes A regardless of storage.
  DenseMatrix to_dense() const;

  Vector apply(std::span<const double> x) const;

 private:
  std::variant<DenseMatrix, TridiagonalMatrix> a_;
  Vector b_;
};

// ---------------------------------------------------------------------------
// Sign diagonal D(x) = diag(sign(x))

class SignDiagonal {
 public:
  SignDiagonal() = default;
  explicit SignDiagonal(std::vector<std::int8_t> diag);

  std::size_t size() const noexcept { return diag_.size(); }
  std::int8_t operator[](std::size_t i) const noexcept { return diag_[i]; }
  const std::vector<std::int8_t>& entries() const noexcept { return diag_; }

  bool is_identity() const noexcept;
  Vector as_vector() const;
  /// D x, componentwise.
  Vector apply(std::span<const double> x) const;
  /// Entrywise D >= other.
  bool dominates(const SignDiagonal& other) const;
  std::string to_string() const;

  friend bool operator==(const SignDiagonal&, const SignDiagonal&) = default;

 private:
  std::vector<std::int8_t> diag_;
};

/// sign(0) is exactly 0; no tolerance band.
SignDiagonal sign_diagonal(std::span<const double> x);

struct Residual {
  Vector r;
  double norm = 0.0;
};

/// r = A x - |x| - b and its Euclidean norm.
Residual residual(const AveProblem& p, std::span<const double> x);

DenseMatrix abs_matrix(const DenseMatrix& m);

// ---------------------------------------------------------------------------
// Small vector helpers

double norm2(std::span<const double> x);
double norm_inf(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
bool all_finite(std::span<const double> x);

}  // namespace ave
