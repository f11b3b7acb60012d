#include "ave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ave/linalg.hpp"

namespace ave {

namespace {

double row_sum_norm(const AveProblem& p) {
  double best = 0.0;
  if (p.is_tridiagonal()) {
    const auto& t = p.tridiagonal();
    for (std::size_t i = 0; i < t.size(); ++i) {
      double s = std::abs(t.main()[i]);
      if (i > 0) s += std::abs(t.sub()[i - 1]);
      if (i + 1 < t.size()) s += std::abs(t.super()[i]);
      best = std::max(best, s);
    }
    return best;
  }
  const auto& a = p.dense();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (double v : a.row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

// Residual level attainable by an exact solution evaluated in floating point.
double roundoff_bound(const AveProblem& p, std::span<const double> x) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double n = static_cast<double>(p.size());
  return 16.0 * eps * std::sqrt(n) * n *
         ((row_sum_norm(p) + 1.0) * norm_inf(x) + norm_inf(p.b()));
}

std::optional<Vector> newton_step(const AveProblem& p, const SignDiagonal& d, double rank_tol) {
  const Vector dv = d.as_vector();
  try {
    Vector x;
    if (p.is_tridiagonal()) {
      x = tridiag_solve(p.tridiagonal().minus_diagonal(dv), p.b());
    } else {
      DenseMatrix m = p.dense();
      for (std::size_t i = 0; i < dv.size(); ++i) m(i, i) -= dv[i];
      const auto f = lu_factor(m, rank_tol);
      if (f.singular) return std::nullopt;
      x = solve(f, p.b());
    }
    if (!all_finite(x)) return std::nullopt;
    return x;
  } catch (const SingularSystem&) {
    return std::nullopt;
  }
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::SignStabilized: return "SignStabilized";
    case SolveStatus::IterationCapReached: return "IterationCapReached";
    case SolveStatus::SingularStep: return "SingularStep";
  }
  return "?";
}

GuardResult guard_d0(const AveProblem& p, const SolverConfig& cfg, const Vector& v) {
  const std::size_t n = p.size();
  if (v.size() != n) throw DimensionMismatch("guard_d0: v has the wrong length");
  GuardResult g{cfg, false, dot(v, p.b()), {}};
  Vector x0 = cfg.x0.value_or(Vector(n, 1.0));
  if (sign_diagonal(x0).is_identity()) {
    x0[0] = -x0[0];
    g.x0_adjusted = true;
    g.notes.emplace_back("D(x0) = I under condition 3b; negated x0[0]");
  }
  g.config.x0 = std::move(x0);
  if (g.v_dot_b >= 0.0)
    g.notes.emplace_back("v^T b >= 0 under condition 3b: finite termination is not guaranteed");
  return g;
}

GuardResult guard_d0(const AveProblem& p, const SolverConfig& cfg, const ConditionReport& report) {
  if (!report.satisfies_3b || !report.v)
    throw Error("guard_d0: condition report does not certify 3b");
  return guard_d0(p, cfg, *report.v);
}

SolveReport gnm_solve(const AveProblem& p, const SolverConfig& cfg) {
  const std::size_t n = p.size();
  if (!(cfg.tol > 0.0)) throw Error("gnm_solve: tol must be positive");
  const std::size_t max_iter = cfg.max_iter.value_or(2 * n + 2);
  if (max_iter < 1) throw Error("gnm_solve: max_iter must be at least 1");

  SolveReport rep;
  Vector x = cfg.x0.value_or(Vector(n, 1.0));
  if (x.size() != n) throw DimensionMismatch("gnm_solve: x0 has the wrong length");
  if (!all_finite(x)) throw NonFiniteValue("gnm_solve: x0 is not finite");

  if (cfg.enforce_d0_not_identity && !p.is_tridiagonal() && sign_diagonal(x).is_identity()) {
    const auto c3b = check_condition_3b(p.dense(), cfg.tols);
    if (c3b.satisfied) {
      auto g = guard_d0(p, cfg, *c3b.v);
      x = *g.config.x0;
      rep.notes = std::move(g.notes);
    }
  }

  auto record = [&rep, &p](Vector xk) {
    const double r = residual(p, xk).norm;
    rep.residual_history.push_back(r);
    rep.sign_history.push_back(sign_diagonal(xk));
    rep.iterates.push_back(std::move(xk));
    return r;
  };

  double res = record(x);
  if (res <= cfg.tol) {
    rep.status = SolveStatus::Converged;
  } else {
    rep.status = SolveStatus::IterationCapReached;
    for (std::size_t k = 0; k < max_iter; ++k) {
      const SignDiagonal& dk = rep.sign_history.back();
      auto next = newton_step(p, dk, cfg.tols.rank_tol);
      if (!next) {
        rep.status = SolveStatus::SingularStep;
        rep.notes.emplace_back("A - D(x^" + std::to_string(k) + ") is singular");
        break;
      }
      const SignDiagonal prev = dk;
      res = record(std::move(*next));
      rep.iterations = k + 1;
      if (res <= cfg.tol) {
        rep.status = SolveStatus::Converged;
        break;
      }
      if (rep.sign_history.back() == prev &&
          res <= roundoff_bound(p, rep.iterates.back())) {
        rep.status = SolveStatus::SignStabilized;
        break;
      }
    }
  }

  rep.x = rep.iterates.back();
  rep.residual = rep.residual_history.back();
  for (std::size_t k = 1; k + 1 < rep.iterates.size(); ++k) {
    const auto& a = rep.iterates[k];
    const auto& b = rep.iterates[k + 1];
    for (std::size_t i = 0; i < n; ++i)
      if (b[i] < a[i] - kMonotoneSlack) rep.monotone_from_k1 = false;
  }
  return rep;
}

}  // namespace ave
