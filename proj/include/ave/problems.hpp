#pragma once

// Problem generators, the max-form converter and the .ave file format.
//
// .ave files are line oriented text:
//
//     version = 1
//     convention = minus          # or plus:  A x + |x| = b
//     structure = dense           # or tridiagonal
//     n = 2
//     A =
//       3 -2
//       -2 3
//     b = -4 -16
//     meta.family = ex4
//
// Tridiagonal files carry `A.sub`, `A.main` and `A.super` lines instead of the
// full matrix (a full `A =` block is also accepted and checked for band
// structure). Numbers are written with 17 significant digits so doubles
// round-trip exactly. Blank lines and text after '#' are ignored.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ave/core.hpp"

namespace ave {

// ---------------------------------------------------------------------------
// Random numbers

/// SplitMix64. Uniform doubles take the top 53 bits: (next() >> 11) * 2^-53.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  std::uint64_t next() noexcept;
  double uniform01() noexcept;                      ///< [0, 1)
  double uniform(double lo, double hi) noexcept;    ///< [lo, hi)

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Generators

/// A = tridiag(-2, 7, -2), b = A x* - |x*| with x*_i = exp(6 (i-1)/(n-1) - 5) - 1 (1-based).
AveProblem gen_example1(std::size_t n);
Vector example1_solution(std::size_t n);

/// The 2x2 problems of examples 2..5.
AveProblem gen_example_k(int k);

/// A - I = s I - B, B uniform in [0,1]^{n x n}, s = 1.1 * rho(B); b uniform in [-10, 10]^n.
/// Draw order: B row-major, then b.
AveProblem gen_random_3a(std::size_t n, std::uint64_t seed);

/// A - I = rho(B) I - B with B irreducible (off-diagonals in (0,1], diagonal in
/// [0,1)); b uniform in [-10, 10]^n, negated if v^T b > 0 for the left Perron
/// vector v. Requires n >= 2.
AveProblem gen_random_3b(std::size_t n, std::uint64_t seed);

struct MaxFormConversion {
  AveProblem problem;
  std::string note;
};

/// max{0, x} + T x = c  becomes  A y - |y| = b with A = I + 2T, b = -2c and x = -y.
MaxFormConversion convert_max_form(const DenseMatrix& t, std::span<const double> c);

// ---------------------------------------------------------------------------
// Files

enum class Family { ex1, ex2, ex3, ex4, ex5, rand3a, rand3b };

std::optional<Family> parse_family(std::string_view name);
const char* to_string(Family f);

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// In-memory problems always use the minus convention.
struct ProblemFile {
  AveProblem problem;
  std::map<std::string, std::string> metadata;
};

/// Validates flag combinations: ex2..ex5 take neither n nor seed, ex1 needs
/// n >= 2, rand3a needs n >= 1 and a seed, rand3b n >= 2 and a seed.
ProblemFile generate(Family family, std::optional<std::size_t> n,
                     std::optional<std::uint64_t> seed);

ProblemFile load_problem(std::istream& in);
ProblemFile load_problem(const std::string& path);
ProblemFile parse_problem(std::string_view text);

void save_problem(std::ostream& out, const ProblemFile& f);
void save_problem(const std::string& path, const ProblemFile& f);
std::string format_problem(const ProblemFile& f);

/// FNV-1a 64-bit of the bytes, as 16 hex digits.
std::string digest(std::string_view bytes);

}  // namespace ave
