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

// Static and adjustable solution methods for RobustProblem.
//
// Static methods (projection, rc, cutting-plane) treat y as here-and-now.
// Adjustable methods (ldr, benders, scenarios, vertex) use y(u). For a
// minimisation problem with fixed recourse:
//
//   scenarios <= benders <= vertex = fully adaptive <= ldr <= static.

#ifndef COUPLEDRO_SOLVERS_HPP_
#define COUPLEDRO_SOLVERS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coupledro/robust_model.hpp"

namespace coupledro {

enum class Method { kProjection, kRc, kCuttingPlane, kLdr, kBenders, kScenarios, kVertex };
const char* method_name(Method method);
// Throws kParseError for unknown names.
Method parse_method(const std::string& name);
bool is_adaptive_method(Method method);

enum class SolveStatus { kOptimal, kIterationLimit, kInexact };
const char* solve_status_name(SolveStatus status);

// Realisations added by a cutting-plane or Benders loop and the row (or -1
// for an objective cut) that produced each.
struct CutPool {
  std::vector<Vector> points;
  std::vector<int> rows;
};

struct SolveResult {
  Method method = Method::kRc;
  SolveStatus status = SolveStatus::kOptimal;
  double objective = kNaN;
  Vector x;  // here-and-now part
  Vector v;  // full static decision (static methods)
  std::optional<AffineDecisionRule> rule;
  // Per-point recourse (vertex and scenario methods).
  std::vector<Vector> points;
  std::vector<Vector> recourse;
  int iterations = 0;
  double max_violation = kNaN;  // from the membership audit
  double wall_seconds = 0.0;
  std::vector<double> history;  // master objective per iteration
  CutPool cuts;
  std::string note;
};

struct SolverOptions {
  double tol = 1e-3;
  int max_iter = 1000;
  int starts = 100;  // random inner starts when the inner problem is inexact
  std::uint64_t seed = 1;
  int audit_samples = 1000;
  bool per_row_cuts = false;  // cutting plane: one cut per violated row
  int vertex_cap = 4096;
  int exact_inner_dim = 10;  // Benders: vertex inner problem up to this dim
  int scenario_count = 200;
  bool boundary_scenarios = true;
};

SolveResult solve_projection(const RobustProblem& prob, const SolverOptions& opts = {});
SolveResult solve_rc(const RobustProblem& prob, const SolverOptions& opts = {});
SolveResult solve_cutting_plane(const RobustProblem& prob, const SolverOptions& opts = {});
SolveResult solve_ldr(const RobustProblem& prob, const SolverOptions& opts = {});
SolveResult solve_benders(const RobustProblem& prob, const SolverOptions& opts = {});
SolveResult solve_full_adaptive_vertex(const RobustProblem& prob, const SolverOptions& opts = {});
SolveResult solve_finite_scenarios(const RobustProblem& prob, const SolverOptions& opts = {});
// One recourse vector per given point; n2 = 0 gives a static solve.
SolveResult solve_scenarios(const RobustProblem& prob, const std::vector<Vector>& points,
                            const SolverOptions& opts = {});

SolveResult solve(const RobustProblem& prob, Method method, const SolverOptions& opts = {});

// Largest constraint violation of the returned solution over samples of the
// coupled set (plus the scenario points for scenario methods).
double audit_solution(const RobustProblem& prob, const SolveResult& result, int samples,
                      std::uint64_t seed);

// Analytic adjustable instances with y_i(u) = 1/u_i, compared with their
// shrinkage factors.
struct ClosedFormCheck {
  std::string name;
  std::string ratio;  // e.g. "z_acp/z_aro"
  double numerator = 0.0;
  double denominator = 0.0;
  double value = 0.0;
  double expected = 0.0;  // the factor expression the instance attains
  double lower = 0.0;
  double upper = 0.0;
  bool within_bounds = false;
  bool attains = false;
};
std::vector<ClosedFormCheck> verify_closed_form_instances();

Json result_to_json(const SolveResult& result);

}  // namespace coupledro

#endif  // COUPLEDRO_SOLVERS_HPP_
