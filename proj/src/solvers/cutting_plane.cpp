// Copyright 2026 The coupledro Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <vector>

#include "internal.hpp"

namespace coupledro {

namespace {

using detail::dense_terms;

SolveResult solve_reformulation(const RobustProblem& prob, const Reformulation& rf,
                                Method method, const SolverOptions& opts,
                                const detail::Stopwatch& watch) {
  LpSolution sol = solve_lp(rf.lp);
  detail::require_optimal(sol, std::string(method_name(method)) + " program");
  SolveResult r;
  r.method = method;
  r.objective = sol.objective;
  r.v = sol.primal.head(rf.num_vars);
  r.x = r.v.head(prob.n1);
  r.iterations = 1;
  detail::finish(prob, r, opts, watch);
  return r;
}

// The cut a'v + w(v)'u <= rhs at a fixed u.
void add_cut(LpBuilder& lp, const RobustRow& row, const Vector& u) {
  LpBuilder::Terms t = dense_terms(row.a);
  double rhs = row.rhs;
  for (const UTerm& term : row.terms) {
    if (term.var < 0) rhs -= term.coef * u(term.k);
    else t.push_back({term.var, term.coef * u(term.k)});
  }
  lp.add_le(t, rhs);
}

}  // namespace

SolveResult solve_projection(const RobustProblem& prob, const SolverOptions& opts) {
  detail::Stopwatch watch;
  const RobustProblem p = prob.as_static();
  return solve_reformulation(p, build_rc_projection(p), Method::kProjection, opts, watch);
}

SolveResult solve_rc(const RobustProblem& prob, const SolverOptions& opts) {
  detail::Stopwatch watch;
  const RobustProblem p = prob.as_static();
  return solve_reformulation(p, build_rc_static(p), Method::kRc, opts, watch);
}

SolveResult solve_cutting_plane(const RobustProblem& prob, const SolverOptions& opts) {
  detail::Stopwatch watch;
  const RobustProblem p = prob.as_static();
  p.validate();
  const int n = p.num_vars();
  const int dim = p.uncertainty.dim;
  const ConvexSet set = intersect(p.uncertainty);

  LpBuilder master;
  for (int j = 0; j < n; ++j) master.add_variable(p.lower(j), p.upper(j), p.cost(j));
  for (int r = 0; r < p.det.A.rows(); ++r)
    master.add_le(dense_terms(p.det.A.row(r).transpose()), p.det.b(r));
  for (int r = 0; r < p.det.E.rows(); ++r)
    master.add_eq(dense_terms(p.det.E.row(r).transpose()), p.det.e(r));
  std::vector<int> uncertain;
  for (int i = 0; i < static_cast<int>(p.rows.size()); ++i) {
    if (p.rows[i].uncertain()) uncertain.push_back(i);
    else master.add_le(dense_terms(p.rows[i].a), p.rows[i].rhs);
  }

  SolveResult r;
  r.method = Method::kCuttingPlane;
  // Nominal start: every uncertain row at the Chebyshev center.
  if (!uncertain.empty()) {
    const Vector u0 = chebyshev_center(set).center;
    for (int i : uncertain) {
      add_cut(master, p.rows[i], u0);
      r.cuts.points.push_back(u0);
      r.cuts.rows.push_back(i);
    }
  }

  Vector v;
  bool converged = false;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    r.iterations = iter + 1;
    LpSolution sol = solve_lp(master.build(p.sense));
    if (sol.status == LpStatus::kInfeasible)
      fail(ErrorCode::kInfeasible, "cutting-plane master is infeasible");
    if (sol.status == LpStatus::kUnbounded) {
      // Cut off the ray with the realisation that penalises it most.
      int best = -1;
      double best_slope = 1e-9;
      Vector best_u;
      for (int i : uncertain) {
        const RobustRow& row = p.rows[i];
        Vector w = Vector::Zero(dim);
        for (const UTerm& t : row.terms)
          if (t.var >= 0) w(t.k) += t.coef * sol.ray(t.var);
        SupportResult s = support_function(set, w);
        if (!s.bounded) fail(ErrorCode::kUnbounded, "uncertainty set is unbounded");
        const double slope = row.a.dot(sol.ray) + s.value;
        if (slope > best_slope) {
          best_slope = slope;
          best = i;
          best_u = s.argmax;
        }
      }
      if (best < 0) fail(ErrorCode::kUnbounded, "robust problem is unbounded");
      add_cut(master, p.rows[best], best_u);
      r.cuts.points.push_back(best_u);
      r.cuts.rows.push_back(best);
      r.history.push_back(p.sense == Sense::kMinimize ? -kInf : kInf);
      continue;
    }
    v = sol.primal;
    r.objective = sol.objective;
    r.history.push_back(sol.objective);
    // Most violated row; ties go to the lowest index.
    int worst = -1;
    double worst_violation = opts.tol;
    std::vector<std::pair<int, Vector>> violated;
    for (int i : uncertain) {
      const RobustRow& row = p.rows[i];
      SupportResult s = support_function(set, row_coefficients(row, v, dim));
      if (!s.bounded) fail(ErrorCode::kUnbounded, "uncertainty set is unbounded");
      const double violation = row.a.dot(v) + s.value - row.rhs;
      if (violation > opts.tol) violated.push_back({i, s.argmax});
      if (violation > worst_violation) {
        worst_violation = violation;
        worst = static_cast<int>(violated.size()) - 1;
      }
    }
    if (worst < 0) {
      converged = true;
      break;
    }
    if (opts.per_row_cuts) {
      for (const auto& [i, u] : violated) {
        add_cut(master, p.rows[i], u);
        r.cuts.points.push_back(u);
        r.cuts.rows.push_back(i);
      }
    } else {
      add_cut(master, p.rows[violated[worst].first], violated[worst].second);
      r.cuts.points.push_back(violated[worst].second);
      r.cuts.rows.push_back(violated[worst].first);
    }
  }
  if (v.size() == 0) fail(ErrorCode::kIterationLimit, "no bounded master solution found");
  r.status = converged ? SolveStatus::kOptimal : SolveStatus::kIterationLimit;
  if (!converged) r.note = "iteration limit reached; returning the last master solution";
  r.v = v;
  r.x = v.head(p.n1);
  detail::finish(p, r, opts, watch);
  return r;
}

}  // namespace coupledro
