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

// Dense two-phase primal simplex.
//
//   min / max  c'x
//   s.t.       A_ineq x <= b_ineq
//              A_eq   x  = b_eq
//              lower <= x <= upper      (entries may be +-infinity)
//
// Multipliers are reported for the minimization form (min c'x, or min -c'x
// when maximizing):
//
//   c_min + A_ineq' * ineq_dual + A_eq' * eq_dual = reduced_cost,
//   ineq_dual >= 0.
//
// A positive reduced cost sits at a lower bound, a negative one at an upper
// bound.

#ifndef COUPLEDRO_LP_HPP_
#define COUPLEDRO_LP_HPP_

#include <string>
#include <utility>
#include <vector>

#include "coupledro/common.hpp"

namespace coupledro {

enum class Sense { kMinimize, kMaximize };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* lp_status_name(LpStatus status);

struct LinearProgram {
  Sense sense = Sense::kMinimize;
  Vector cost;
  Matrix A_ineq;
  Vector b_ineq;
  Matrix A_eq;
  Vector b_eq;
  // Empty means lower = 0 and upper = +inf for every variable.
  Vector lower;
  Vector upper;

  int num_vars() const { return static_cast<int>(cost.size()); }
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;  // c'x in the caller's sense
  Vector primal;
  Vector ineq_dual;
  Vector eq_dual;
  Vector reduced_cost;
  // Unbounded: direction r with A_ineq r <= 0, A_eq r = 0, r within the
  // recession cone of the bounds and an improving objective.
  Vector ray;
  // Infeasible: lambda >= 0, mu such that
  //   min_{lower<=x<=upper} (A_ineq'lambda + A_eq'mu)'x - b_ineq'lambda -
  //   b_eq'mu > 0.
  Vector farkas_ineq;
  Vector farkas_eq;
  int iterations = 0;
};

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double pivot_tol = 1e-10;
  double optimality_tol = 1e-9;
  int max_iterations = 200000;
  // Dantzig pricing is used until this many consecutive degenerate pivots
  // occur, after which Bland's rule takes over until progress resumes.
  int degenerate_switch = 30;
};

// Throws Error(kMalformedProgram) on dimension mismatch, NaN data, or
// lower > upper. Throws Error(kSolverFailure) if the iteration limit is hit.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

// Objective of the dual built from a solution's multipliers (minimization
// form); equals c_min'x at an optimum.
double dual_objective(const LinearProgram& lp, const LpSolution& sol);

// Largest violation of primal feasibility of x.
double primal_infeasibility(const LinearProgram& lp, const Vector& x);

// Incremental construction of a LinearProgram from sparse rows.
class LpBuilder {
 public:
  using Terms = std::vector<std::pair<int, double>>;

  int add_variable(double lower = 0.0, double upper = kInf, double cost = 0.0);
  // Returns the index of the first of n new variables.
  int add_variables(int n, double lower = 0.0, double upper = kInf,
                    double cost = 0.0);
  void set_cost(int var, double cost) { cost_.at(var) = cost; }
  void add_cost(int var, double cost) { cost_.at(var) += cost; }
  void set_bounds(int var, double lower, double upper);

  void add_le(const Terms& terms, double rhs);
  void add_ge(const Terms& terms, double rhs);
  void add_eq(const Terms& terms, double rhs);

  int num_vars() const { return static_cast<int>(cost_.size()); }
  int num_ineq() const { return static_cast<int>(ineq_rhs_.size()); }
  int num_eq() const { return static_cast<int>(eq_rhs_.size()); }

  LinearProgram build(Sense sense) const;

 private:
  std::vector<double> cost_, lower_, upper_;
  std::vector<Terms> ineq_rows_, eq_rows_;
  std::vector<double> ineq_rhs_, eq_rhs_;
};

}  // namespace coupledro

#endif  // COUPLEDRO_LP_HPP_
