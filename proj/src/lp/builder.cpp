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

#include "coupledro/lp.hpp"

namespace coupledro {

int LpBuilder::add_variable(double lower, double upper, double cost) {
  cost_.push_back(cost);
  lower_.push_back(lower);
  upper_.push_back(upper);
  return static_cast<int>(cost_.size()) - 1;
}

int LpBuilder::add_variables(int n, double lower, double upper, double cost) {
  const int first = num_vars();
  for (int i = 0; i < n; ++i) add_variable(lower, upper, cost);
  return first;
}

void LpBuilder::set_bounds(int var, double lower, double upper) {
  lower_.at(var) = lower;
  upper_.at(var) = upper;
}

void LpBuilder::add_le(const Terms& terms, double rhs) {
  ineq_rows_.push_back(terms);
  ineq_rhs_.push_back(rhs);
}

void LpBuilder::add_ge(const Terms& terms, double rhs) {
  Terms neg = terms;
  for (auto& t : neg) t.second = -t.second;
  add_le(neg, -rhs);
}

void LpBuilder::add_eq(const Terms& terms, double rhs) {
  eq_rows_.push_back(terms);
  eq_rhs_.push_back(rhs);
}

LinearProgram LpBuilder::build(Sense sense) const {
  const int n = num_vars();
  LinearProgram lp;
  lp.sense = sense;
  lp.cost = Eigen::Map<const Vector>(cost_.data(), n);
  lp.lower = Eigen::Map<const Vector>(lower_.data(), n);
  lp.upper = Eigen::Map<const Vector>(upper_.data(), n);
  lp.A_ineq = Matrix::Zero(num_ineq(), n);
  lp.b_ineq = Vector(num_ineq());
  for (int i = 0; i < num_ineq(); ++i) {
    for (const auto& [j, a] : ineq_rows_[i]) {
      if (j < 0 || j >= n) fail(ErrorCode::kMalformedProgram, "row references unknown variable");
      lp.A_ineq(i, j) += a;
    }
    lp.b_ineq(i) = ineq_rhs_[i];
  }
  lp.A_eq = Matrix::Zero(num_eq(), n);
  lp.b_eq = Vector(num_eq());
  for (int i = 0; i < num_eq(); ++i) {
    for (const auto& [j, a] : eq_rows_[i]) {
      if (j < 0 || j >= n) fail(ErrorCode::kMalformedProgram, "row references unknown variable");
      lp.A_eq(i, j) += a;
    }
    lp.b_eq(i) = eq_rhs_[i];
  }
  return lp;
}

}  // namespace coupledro
