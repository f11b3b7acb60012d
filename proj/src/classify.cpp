#include "ave/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ave/linalg.hpp"
#include "ave/solver.hpp"

namespace ave {

namespace {

bool is_symmetric(const DenseMatrix& a, double zero_tol) {
  const double tol = zero_tol * std::max(1.0, a.max_abs());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::UniqueSolution: return "UniqueSolution";
    case Verdict::ExistsNotUnique: return "ExistsNotUnique";
    case Verdict::NoSolution: return "NoSolution";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(VerdictBasis b) {
  switch (b) {
    case VerdictBasis::Condition3a: return "Condition3a";
    case VerdictBasis::Condition3b_NegVb: return "Condition3b_NegVb";
    case VerdictBasis::Condition3b_ZeroVb_Symmetric: return "Condition3b_ZeroVb_Symmetric";
    case VerdictBasis::Condition3b_PosVb: return "Condition3b_PosVb";
    case VerdictBasis::NoCertificate: return "NoCertificate";
  }
  return "?";
}

SolvabilityVerdict classify(const AveProblem& p, const Tolerances& tols) {
  const DenseMatrix a = p.to_dense();
  SolvabilityVerdict out;
  out.conditions = diagnostics(a, tols);
  const auto& rep = out.conditions;

  auto solve_witness = [&]() {
    SolverConfig cfg;
    cfg.tols = tols;
    const auto r = gnm_solve(p, cfg);
    if (r.status == SolveStatus::Converged || r.status == SolveStatus::SignStabilized)
      out.witness = r.x;
  };

  if (rep.satisfies_3a) {
    out.verdict = Verdict::UniqueSolution;
    out.basis = VerdictBasis::Condition3a;
    solve_witness();
    return out;
  }
  if (!rep.satisfies_3b) return out;

  const Vector& v = *rep.v;
  const double vb = dot(v, p.b());
  out.v_dot_b = vb;
  const double tie = kTieTol * norm2(v) * norm2(p.b());
  if (vb < -tie) {
    out.verdict = Verdict::UniqueSolution;
    out.basis = VerdictBasis::Condition3b_NegVb;
    solve_witness();
  } else if (vb > tie) {
    out.verdict = Verdict::NoSolution;
    out.basis = VerdictBasis::Condition3b_PosVb;
  } else if (is_symmetric(a, tols.zero_tol)) {
    out.verdict = Verdict::ExistsNotUnique;
    out.basis = VerdictBasis::Condition3b_ZeroVb_Symmetric;
    out.witness = least_squares_min_norm(add_identity(a, -1.0), p.b(), tols.rank_tol);
  }
  return out;
}

double family_alpha_bound(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw DimensionMismatch("solution_family: u and v differ in length");
  double bound = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(v[i] > 0.0)) throw Error("solution_family: v must be strictly positive");
    bound = std::min(bound, u[i] / v[i]);
  }
  return bound;
}

std::vector<Vector> solution_family(const Vector& u, const Vector& v,
                                    std::span<const double> alphas) {
  const double bound = family_alpha_bound(u, v);
  std::vector<Vector> xs;
  xs.reserve(alphas.size());
  for (double alpha : alphas) {
    if (!(alpha < bound))
      throw AlphaOutOfRange("alpha = " + std::to_string(alpha) +
                            " is not below min u_i/v_i = " + std::to_string(bound));
    Vector x(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) x[i] = u[i] - alpha * v[i];
    xs.push_back(std::move(x));
  }
  return xs;
}

std::vector<Vector> solution_family(const AveProblem& p, const Vector& v,
                                    std::span<const double> alphas) {
  const Vector u = least_squares_min_norm(add_identity(p.to_dense(), -1.0), p.b());
  return solution_family(u, v, alphas);
}

}  // namespace ave
