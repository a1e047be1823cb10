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

// Helpers shared by the solver translation units.

#ifndef COUPLEDRO_SRC_SOLVERS_INTERNAL_HPP_
#define COUPLEDRO_SRC_SOLVERS_INTERNAL_HPP_

#include <chrono>
#include <string>

#include "coupledro/solvers.hpp"

namespace coupledro::detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Raises kInfeasible or kUnbounded for a non-optimal LP.
inline void require_optimal(const LpSolution& sol, const std::string& what) {
  if (sol.status == LpStatus::kInfeasible) fail(ErrorCode::kInfeasible, what + " is infeasible");
  if (sol.status == LpStatus::kUnbounded) fail(ErrorCode::kUnbounded, what + " is unbounded");
}

inline LpBuilder::Terms dense_terms(const Vector& a) {
  LpBuilder::Terms t;
  for (int j = 0; j < a.size(); ++j)
    if (a(j) != 0.0) t.push_back({j, a(j)});
  return t;
}

// Smallest uniform violation of the recourse rows at (x, u); 0 when a
// recourse exists. Defined with the Benders solver.
double recourse_violation(const RobustProblem& prob, const Vector& x, const Vector& u);

// Runs the audit when requested and stamps the timing.
inline void finish(const RobustProblem& prob, SolveResult& r, const SolverOptions& opts,
                   const Stopwatch& watch) {
  r.wall_seconds = watch.seconds();
  if (opts.audit_samples > 0) r.max_violation = audit_solution(prob, r, opts.audit_samples, opts.seed);
}

}  // namespace coupledro::detail

#endif  // COUPLEDRO_SRC_SOLVERS_INTERNAL_HPP_
