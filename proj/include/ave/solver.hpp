#pragma once

// Generalized Newton method for A x - |x| = b:
//
//     x^{k+1} = [A - D(x^k)]^{-1} b,   D(x) = diag(sign(x)).
//
// Under (3a), or (3b) with v^T b < 0 and D(x^0) != I, the iteration reaches an
// exact solution in at most 2n + 2 steps, with x^{k+1} >= x^k for k >= 1.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ave/core.hpp"
#include "ave/mclass.hpp"

namespace ave {

struct SolverConfig {
  double tol = 1e-7;                     ///< stop when ||A x - |x| - b||_2 <= tol
  std::optional<std::size_t> max_iter;   ///< default 2n + 2
  std::optional<Vector> x0;              ///< default all-ones
  /// When D(x0) == I and A passes the (3b) check, flip x0's first component.
  bool enforce_d0_not_identity = true;
  Tolerances tols{};
};

enum class SolveStatus { Converged, SignStabilized, IterationCapReached, SingularStep };

const char* to_string(SolveStatus s);

struct SolveReport {
  SolveStatus status = SolveStatus::IterationCapReached;
  std::size_t iterations = 0;
  Vector x;                                ///< final iterate
  double residual = 0.0;                   ///< residual norm at x
  std::vector<Vector> iterates;            ///< x^0 .. x^iterations
  std::vector<double> residual_history;    ///< length iterations + 1
  std::vector<SignDiagonal> sign_history;  ///< D(x^k), length iterations + 1
  bool monotone_from_k1 = true;
  std::vector<std::string> notes;
};

/// Slack used for the x^{k+1} >= x^k check.
inline constexpr double kMonotoneSlack = 1e-12;

/// Runs the iteration with both stopping rules. The residual test has
/// priority and yields Converged. A repeated sign pattern with a residual
/// still above tol yields SignStabilized only if the residual is within the
/// floating-point bound of an exact solution; otherwise iteration continues
/// to the cap (every further step would reproduce the same iterate).
/// A singular step matrix stops with SingularStep at the last good iterate.
SolveReport gnm_solve(const AveProblem& p, const SolverConfig& cfg = {});

struct GuardResult {
  SolverConfig config;
  bool x0_adjusted = false;
  double v_dot_b = 0.0;
  std::vector<std::string> notes;
};

/// Enforces D(x0) != I under (3b) and reports v^T b.
GuardResult guard_d0(const AveProblem& p, const SolverConfig& cfg, const Vector& v);
GuardResult guard_d0(const AveProblem& p, const SolverConfig& cfg, const ConditionReport& report);

}  // namespace ave
