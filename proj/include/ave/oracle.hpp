#pragma once

// Brute-force ground truth for small AVEs.
//
// Every solution x satisfies (A - S) x = b with S = diag(s) for any
// s in {-1,+1}^n with s_i x_i >= 0 (zero components fit either sign), so the
// 2^n sign patterns cover all solutions.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ave/core.hpp"

namespace ave {

inline constexpr std::size_t kOracleMaxDimension = 20;

class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

struct OracleOptions {
  double verify_tol = 1e-8;   ///< residual bound for accepted solutions (absolute)
  double dedup_tol = 1e-10;   ///< sign-consistency slack and duplicate radius
  double rank_tol = 1e-10;
};

struct SingularBranch {
  std::vector<std::int8_t> pattern;  ///< entries in {-1,+1}
  /// b is in the range of A - diag(s) and some solution of that system
  /// satisfies s_i x_i >= 0, i.e. a (suspected) continuum of AVE solutions.
  bool consistent = false;
  std::optional<Vector> anchor;  ///< a sign-consistent solution on the branch
};

struct SolutionSet {
  std::vector<Vector> isolated;
  std::vector<SingularBranch> singular_branches;
  std::size_t exhaustive_bound = kOracleMaxDimension;
};

/// Throws DimensionTooLarge for n > 20.
SolutionSet enumerate_solutions(const AveProblem& p, const OracleOptions& opts = {});

struct SolutionCount {
  enum class Kind { Zero, One, FinitelyMany, ContinuumSuspected };
  Kind kind = Kind::Zero;
  std::size_t isolated = 0;
};

const char* to_string(SolutionCount::Kind k);

SolutionCount count_solutions(const SolutionSet& set);
SolutionCount count_solutions(const AveProblem& p, const OracleOptions& opts = {});

/// Some y >= 0 with g y = rhs, or nothing. Phase-one simplex with Bland's rule.
std::optional<Vector> nonnegative_solution(const DenseMatrix& g, std::span<const double> rhs,
                                           double tol = 1e-9);

}  // namespace ave
