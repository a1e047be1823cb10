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

#include <string>
#include <vector>

#include "internal.hpp"

namespace coupledro {

namespace {

bool has_y_part(const Vector& a, int n1) {
  return a.size() > n1 && a.tail(a.size() - n1).cwiseAbs().maxCoeff() > 0.0;
}

}  // namespace

SolveResult solve_ldr(const RobustProblem& prob, const SolverOptions& opts) {
  detail::Stopwatch watch;
  if (!prob.adaptive) fail(ErrorCode::kUnsupported, "decision rules need an adjustable problem");
  Reformulation rf = build_rc_ldr(prob);
  LpSolution sol = solve_lp(rf.lp);
  detail::require_optimal(sol, "decision-rule counterpart");
  SolveResult r;
  r.method = Method::kLdr;
  r.objective = sol.objective;
  r.x = sol.primal.head(prob.n1);
  r.rule = extract_rule(prob, rf, sol.primal);
  r.iterations = 1;
  detail::finish(prob, r, opts, watch);
  return r;
}

SolveResult solve_scenarios(const RobustProblem& prob, const std::vector<Vector>& points,
                            const SolverOptions& opts) {
  detail::Stopwatch watch;
  prob.validate();
  if (points.empty()) fail(ErrorCode::kMalformedProgram, "no scenarios given");
  const int n1 = prob.n1, n2 = prob.n2, n = prob.num_vars();
  const bool per_point = prob.adaptive && n2 > 0;
  const int copies = per_point ? static_cast<int>(points.size()) : 1;
  const double sign = prob.sense == Sense::kMinimize ? 1.0 : -1.0;

  LpBuilder lp;
  for (int j = 0; j < n1; ++j) lp.add_variable(prob.lower(j), prob.upper(j), prob.cost(j));
  std::vector<int> y_first(copies);
  for (int s = 0; s < copies; ++s) {
    y_first[s] = lp.num_vars();
    for (int j = 0; j < n2; ++j)
      lp.add_variable(prob.lower(n1 + j), prob.upper(n1 + j), per_point ? 0.0 : prob.cost(n1 + j));
  }
  const int tau = per_point ? lp.add_variable(-kInf, kInf, 1.0) : -1;
  auto var = [&](int s, int j) { return j < n1 ? j : y_first[s] + j - n1; };
  auto mapped = [&](int s, const Vector& a) {
    LpBuilder::Terms t;
    for (int j = 0; j < n; ++j)
      if (a(j) != 0.0) t.push_back({var(s, j), a(j)});
    return t;
  };

  for (int s = 0; s < copies; ++s) {
    if (per_point) {
      // d'y_s - tau <= 0 when minimising, tau - d'y_s <= 0 when maximising.
      LpBuilder::Terms t;
      for (int j = 0; j < n2; ++j)
        if (prob.cost(n1 + j) != 0.0) t.push_back({var(s, n1 + j), sign * prob.cost(n1 + j)});
      t.push_back({tau, -sign});
      lp.add_le(t, 0.0);
    }
    for (int r = 0; r < prob.det.A.rows(); ++r) {
      const Vector a = prob.det.A.row(r).transpose();
      if (s == 0 || has_y_part(a, n1)) lp.add_le(mapped(s, a), prob.det.b(r));
    }
    for (int r = 0; r < prob.det.E.rows(); ++r) {
      const Vector e = prob.det.E.row(r).transpose();
      if (s == 0 || has_y_part(e, n1)) lp.add_eq(mapped(s, e), prob.det.e(r));
    }
  }
  // Robust rows at every point, with the recourse copy of that point.
  for (size_t q = 0; q < points.size(); ++q) {
    const Vector& u = points[q];
    if (u.size() != prob.uncertainty.dim) fail(ErrorCode::kMalformedProgram, "scenario size");
    const int s = per_point ? static_cast<int>(q) : 0;
    for (const RobustRow& row : prob.rows) {
      if (!row.uncertain() && (q > 0 && (!per_point || !has_y_part(row.a, n1)))) continue;
      LpBuilder::Terms t = mapped(s, row.a);
      double rhs = row.rhs;
      for (const UTerm& term : row.terms) {
        if (term.var < 0) rhs -= term.coef * u(term.k);
        else t.push_back({var(s, term.var), term.coef * u(term.k)});
      }
      lp.add_le(t, rhs);
    }
  }

  LpSolution sol = solve_lp(lp.build(prob.sense));
  detail::require_optimal(sol, "scenario program");
  SolveResult r;
  r.method = Method::kScenarios;
  r.objective = sol.objective;
  r.x = sol.primal.head(n1);
  r.iterations = 1;
  r.points = points;
  if (per_point) {
    for (int s = 0; s < copies; ++s) r.recourse.push_back(sol.primal.segment(y_first[s], n2));
  } else {
    r.v = Vector(n);
    r.v << r.x, sol.primal.segment(y_first[0], n2);
  }
  detail::finish(prob, r, opts, watch);
  return r;
}

SolveResult solve_full_adaptive_vertex(const RobustProblem& prob, const SolverOptions& opts) {
  detail::Stopwatch watch;
  const ConvexSet set = polyhedral_set(prob.uncertainty);
  if (!is_bounded(set.poly)) fail(ErrorCode::kUnbounded, "vertex method needs a polytope");
  VertexList vertices = enumerate_vertices(set.poly);
  if (static_cast<int>(vertices.size()) > opts.vertex_cap)
    fail(ErrorCode::kVertexCapExceeded,
         std::to_string(vertices.size()) + " vertices exceed the cap of " +
             std::to_string(opts.vertex_cap));
  SolverOptions inner = opts;
  inner.audit_samples = 0;
  SolveResult r = solve_scenarios(prob, vertices, inner);
  r.method = Method::kVertex;
  if (!prob.fixed_recourse()) {
    r.status = SolveStatus::kInexact;
    r.note = "uncertainty multiplies the recourse; the vertex program is a relaxation";
  }
  detail::finish(prob, r, opts, watch);
  return r;
}

SolveResult solve_finite_scenarios(const RobustProblem& prob, const SolverOptions& opts) {
  detail::Stopwatch watch;
  const ConvexSet set = intersect(prob.uncertainty);
  SamplerOptions so;
  so.rescale_to_boundary = opts.boundary_scenarios;
  std::vector<Vector> points = hit_and_run(set, opts.scenario_count, opts.seed, so);
  SolverOptions inner = opts;
  inner.audit_samples = 0;
  SolveResult r = solve_scenarios(prob, points, inner);
  r.method = Method::kScenarios;
  r.note = "optimistic bound over sampled scenarios";
  detail::finish(prob, r, opts, watch);
  return r;
}

}  // namespace coupledro
