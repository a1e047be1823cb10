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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "internal.hpp"

namespace coupledro {

namespace {

double rows_violation(const RobustProblem& prob, const Vector& v, const Vector& u) {
  double worst = det_violation(prob, v);
  for (const RobustRow& row : prob.rows) worst = std::max(worst, row_violation(row, v, u));
  return worst;
}

Vector join(const Vector& x, const Vector& y) {
  Vector v(x.size() + y.size());
  v << x, y;
  return v;
}

// Convex weights expressing u in terms of the points, if any.
bool barycentric(const std::vector<Vector>& points, const Vector& u, Vector& weights) {
  const int n = static_cast<int>(points.size()), dim = static_cast<int>(u.size());
  LinearProgram lp;
  lp.cost = Vector::Zero(n);
  lp.A_ineq = Matrix(0, n);
  lp.b_ineq = Vector(0);
  lp.A_eq = Matrix(dim + 1, n);
  lp.b_eq = Vector(dim + 1);
  for (int s = 0; s < n; ++s) {
    lp.A_eq.block(0, s, dim, 1) = points[s];
    lp.A_eq(dim, s) = 1.0;
  }
  lp.b_eq << u, 1.0;
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) return false;
  weights = sol.primal;
  return true;
}

Json number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

const char* method_name(Method method) {
  switch (method) {
    case Method::kProjection: return "projection";
    case Method::kRc: return "rc";
    case Method::kCuttingPlane: return "cutting-plane";
    case Method::kLdr: return "ldr";
    case Method::kBenders: return "benders";
    case Method::kScenarios: return "scenarios";
    case Method::kVertex: return "vertex";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::kProjection, Method::kRc, Method::kCuttingPlane, Method::kLdr,
                   Method::kBenders, Method::kScenarios, Method::kVertex})
    if (name == method_name(m)) return m;
  fail(ErrorCode::kParseError, "unknown method '" + name + "'");
}

bool is_adaptive_method(Method method) {
  return method == Method::kLdr || method == Method::kBenders || method == Method::kScenarios ||
         method == Method::kVertex;
}

const char* solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kIterationLimit: return "iteration_limit";
    case SolveStatus::kInexact: return "inexact";
  }
  return "unknown";
}

SolveResult solve(const RobustProblem& prob, Method method, const SolverOptions& opts) {
  switch (method) {
    case Method::kProjection: return solve_projection(prob, opts);
    case Method::kRc: return solve_rc(prob, opts);
    case Method::kCuttingPlane: return solve_cutting_plane(prob, opts);
    case Method::kLdr: return solve_ldr(prob, opts);
    case Method::kBenders: return solve_benders(prob, opts);
    case Method::kScenarios: return solve_finite_scenarios(prob, opts);
    case Method::kVertex: return solve_full_adaptive_vertex(prob, opts);
  }
  fail(ErrorCode::kUnsupported, "unknown method");
}

double audit_solution(const RobustProblem& prob, const SolveResult& r, int samples,
                      std::uint64_t seed) {
  const ConvexSet set = intersect(prob.uncertainty);
  std::vector<Vector> us = hit_and_run(set, samples, seed);
  double worst = 0.0;
  const int n = prob.num_vars();

  if (r.v.size() == n) {
    for (const Vector& u : us) worst = std::max(worst, rows_violation(prob, r.v, u));
    for (const Vector& u : r.points) worst = std::max(worst, rows_violation(prob, r.v, u));
    return worst;
  }
  if (r.rule) {
    for (const Vector& u : us)
      worst = std::max(worst, rows_violation(prob, join(r.x, r.rule->evaluate(u)), u));
    return worst;
  }
  if (!r.recourse.empty()) {
    for (size_t s = 0; s < r.points.size(); ++s)
      worst = std::max(worst, rows_violation(prob, join(r.x, r.recourse[s]), r.points[s]));
    // A vertex policy extends to the whole set by convex combination.
    if (r.method == Method::kVertex && prob.fixed_recourse()) {
      for (const Vector& u : us) {
        Vector w;
        if (!barycentric(r.points, u, w)) {
          worst = std::max(worst, kInf);
          continue;
        }
        Vector y = Vector::Zero(prob.n2);
        for (size_t s = 0; s < r.points.size(); ++s) y += w(s) * r.recourse[s];
        worst = std::max(worst, rows_violation(prob, join(r.x, y), u));
      }
    }
    return worst;
  }
  if (r.method == Method::kBenders) {
    for (const Vector& u : us) worst = std::max(worst, detail::recourse_violation(prob, r.x, u));
    return worst;
  }
  return kNaN;
}

Json result_to_json(const SolveResult& r) {
  Json j;
  j["method"] = method_name(r.method);
  j["status"] = solve_status_name(r.status);
  j["objective"] = number(r.objective);
  j["x"] = vector_to_json(r.x);
  if (r.v.size() > 0) j["v"] = vector_to_json(r.v);
  if (r.rule) j["rule"] = {{"z", vector_to_json(r.rule->z)}, {"V", matrix_to_json(r.rule->V)}};
  if (!r.recourse.empty()) j["num_points"] = r.points.size();
  j["iterations"] = r.iterations;
  j["max_violation"] = number(r.max_violation);
  j["wall_seconds"] = r.wall_seconds;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace coupledro
