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

// Kelley-style outer approximation: cone constraints are replaced by
// tangent cuts at the current LP point until every cone holds to tolerance.

#include <cmath>
#include <vector>

#include "coupledro/polyhedra.hpp"

namespace coupledro {

namespace {

void add_cut(LinearProgram& lp, const SocConstraint& c, const Vector& normal) {
  const int n = lp.num_vars();
  const int r = static_cast<int>(lp.A_ineq.rows());
  if (r == 0) lp.A_ineq = Matrix(0, n);
  lp.A_ineq.conservativeResize(r + 1, n);
  lp.b_ineq.conservativeResize(r + 1);
  lp.A_ineq.row(r).setZero();
  for (size_t k = 0; k < c.vars.size(); ++k) lp.A_ineq(r, c.vars[k]) += normal(k);
  if (c.slope.size()) lp.A_ineq.row(r) -= c.slope.transpose();
  lp.b_ineq(r) = c.radius;
}

Vector gather(const Vector& z, const std::vector<int>& idx) {
  Vector out(idx.size());
  for (size_t k = 0; k < idx.size(); ++k) out(k) = z(idx[k]);
  return out;
}

}  // namespace

LpSolution solve_conic(const ConicProgram& prog, double tol, int max_rounds) {
  if (prog.cones.empty()) return solve_lp(prog.lp);
  LinearProgram lp = prog.lp;
  for (const SocConstraint& c : prog.cones) {
    const int k = static_cast<int>(c.vars.size());
    for (int i = 0; i < k; ++i) {
      Vector e = Vector::Zero(k);
      e(i) = 1.0;
      add_cut(lp, c, e);
      add_cut(lp, c, -e);
    }
  }
  for (int round = 0; round < max_rounds; ++round) {
    LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::kInfeasible) return sol;
    bool added = false;
    if (sol.status == LpStatus::kUnbounded) {
      for (const SocConstraint& c : prog.cones) {
        Vector d = gather(sol.ray, c.vars);
        const double nd = d.norm();
        if (nd > 1e-12) {
          add_cut(lp, c, d / nd);
          added = true;
        }
      }
      if (!added) return sol;
      continue;
    }
    for (const SocConstraint& c : prog.cones) {
      Vector zs = gather(sol.primal, c.vars);
      const double nz = zs.norm();
      double rhs = c.radius;
      if (c.slope.size()) rhs += c.slope.dot(sol.primal);
      if (nz - rhs > tol * std::max(1.0, c.radius) && nz > 0.0) {
        add_cut(lp, c, zs / nz);
        added = true;
      }
    }
    if (!added) return sol;
  }
  fail(ErrorCode::kSolverFailure, "cone outer approximation did not converge");
}

}  // namespace coupledro
