#pragma once

// Solvability verdicts:
//   (3a)                        -> unique solution
//   (3b), v^T b < 0             -> unique solution
//   (3b), v^T b = 0, A = A^T    -> solutions exist, not unique: x(a) = u - a v, a < min u_i/v_i
//   (3b), v^T b > 0             -> no solution
// Anything else is Unknown.

#include <optional>
#include <span>
#include <vector>

#include "ave/core.hpp"
#include "ave/mclass.hpp"

namespace ave {

enum class Verdict { UniqueSolution, ExistsNotUnique, NoSolution, Unknown };
enum class VerdictBasis {
  Condition3a,
  Condition3b_NegVb,
  Condition3b_ZeroVb_Symmetric,
  Condition3b_PosVb,
  NoCertificate
};

const char* to_string(Verdict v);
const char* to_string(VerdictBasis b);

struct SolvabilityVerdict {
  Verdict verdict = Verdict::Unknown;
  VerdictBasis basis = VerdictBasis::NoCertificate;
  std::optional<double> v_dot_b;
  /// GNM solution for UniqueSolution, the family anchor u for ExistsNotUnique.
  std::optional<Vector> witness;
  ConditionReport conditions;
};

/// Relative band for "v^T b = 0": |v^T b| <= kTieTol * ||v|| * ||b||.
inline constexpr double kTieTol = 1e-10;

SolvabilityVerdict classify(const AveProblem& p, const Tolerances& tols = {});

class AlphaOutOfRange : public Error {
 public:
  using Error::Error;
};

/// x(alpha) = u - alpha v for each alpha. Every alpha must satisfy
/// alpha < min_i u_i / v_i, otherwise AlphaOutOfRange.
std::vector<Vector> solution_family(const Vector& u, const Vector& v,
                                    std::span<const double> alphas);

/// Same, with u the minimum-norm solution of (A - I) u = b.
std::vector<Vector> solution_family(const AveProblem& p, const Vector& v,
                                    std::span<const double> alphas);

/// min_i u_i / v_i, the (exclusive) upper bound on alpha.
double family_alpha_bound(const Vector& u, const Vector& v);

}  // namespace ave
