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

#include "coupledro/robust_model.hpp"

namespace coupledro {

namespace {

using Terms = LpBuilder::Terms;

// Coefficient of u_k as an affine function of LP variables.
struct UCoef {
  Terms vars;
  double constant = 0.0;
  bool zero() const { return vars.empty() && constant == 0.0; }
};

Terms dense_terms(const Vector& a, int first = 0) {
  Terms t;
  for (int j = 0; j < a.size(); ++j)
    if (a(j) != 0.0) t.push_back({first + j, a(j)});
  return t;
}

// det + sup_{u in P} w'u <= rhs, written as det + h'z <= rhs, Q'z = w,
// z >= 0.
void add_robust_row(LpBuilder& lp, const Polyhedron& P, Terms det, const std::vector<UCoef>& w,
                    double rhs) {
  bool any = false;
  for (const UCoef& c : w) any = any || !c.zero();
  if (!any) {
    lp.add_le(det, rhs);
    return;
  }
  const int rows = P.rows();
  const int z = lp.add_variables(rows, 0.0, kInf);
  for (int k = 0; k < P.dim(); ++k) {
    Terms eq;
    for (int r = 0; r < rows; ++r)
      if (P.A(r, k) != 0.0) eq.push_back({z + r, P.A(r, k)});
    for (const auto& [var, coef] : w[k].vars) eq.push_back({var, -coef});
    if (eq.empty()) {
      if (w[k].constant != 0.0) fail(ErrorCode::kUnbounded, "uncertain direction is unbounded");
      continue;
    }
    lp.add_eq(eq, w[k].constant);
  }
  for (int r = 0; r < rows; ++r)
    if (P.b(r) != 0.0) det.push_back({z + r, P.b(r)});
  lp.add_le(det, rhs);
}

std::vector<UCoef> row_ucoefs(const RobustRow& row, int dim) {
  std::vector<UCoef> w(dim);
  for (const UTerm& t : row.terms) {
    if (t.var < 0) w[t.k].constant += t.coef;
    else w[t.k].vars.push_back({t.var, t.coef});
  }
  return w;
}

// Decision variables with bounds and cost, and the deterministic rows.
LpBuilder base_builder(const RobustProblem& prob) {
  LpBuilder lp;
  for (int j = 0; j < prob.num_vars(); ++j)
    lp.add_variable(prob.lower(j), prob.upper(j), prob.cost(j));
  for (int r = 0; r < prob.det.A.rows(); ++r)
    lp.add_le(dense_terms(prob.det.A.row(r).transpose()), prob.det.b(r));
  for (int r = 0; r < prob.det.E.rows(); ++r)
    lp.add_eq(dense_terms(prob.det.E.row(r).transpose()), prob.det.e(r));
  return lp;
}

}  // namespace

Reformulation build_rc_projection(const RobustProblem& prob) {
  prob.validate();
  LpBuilder lp = base_builder(prob);
  const int dim = prob.uncertainty.dim;
  ConvexSet set;
  bool have_set = false;
  for (const RobustRow& row : prob.rows) {
    double worst = 0.0;
    if (row.uncertain()) {
      for (const UTerm& t : row.terms)
        if (t.var >= 0)
          fail(ErrorCode::kUnsupported,
               "the projection method needs uncertainty in the right-hand side only");
      if (!have_set) {
        set = intersect(prob.uncertainty);
        have_set = true;
      }
      SupportResult s = support_function(set, row_coefficients(row, Vector(), dim));
      if (!s.bounded) fail(ErrorCode::kUnbounded, "worst case of a row is unbounded");
      worst = s.value;
    }
    lp.add_le(dense_terms(row.a), row.rhs - worst);
  }
  Reformulation rf;
  rf.lp = lp.build(prob.sense);
  rf.num_vars = prob.num_vars();
  return rf;
}

Reformulation build_rc_static(const RobustProblem& prob) {
  prob.validate();
  LpBuilder lp = base_builder(prob);
  const int dim = prob.uncertainty.dim;
  Polyhedron P;
  bool have_set = false;
  for (const RobustRow& row : prob.rows) {
    if (row.uncertain() && !have_set) {
      P = polyhedral_set(prob.uncertainty).poly;
      have_set = true;
    }
    if (!row.uncertain()) {
      lp.add_le(dense_terms(row.a), row.rhs);
      continue;
    }
    add_robust_row(lp, P, dense_terms(row.a), row_ucoefs(row, dim), row.rhs);
  }
  Reformulation rf;
  rf.lp = lp.build(prob.sense);
  rf.num_vars = prob.num_vars();
  return rf;
}

Reformulation build_rc_ldr(const RobustProblem& prob) {
  prob.validate();
  if (!prob.fixed_recourse())
    fail(ErrorCode::kUnsupported, "decision rules need fixed recourse");
  const int n1 = prob.n1, n2 = prob.n2, n = prob.num_vars();
  const int dim = prob.uncertainty.dim;
  const Polyhedron P = polyhedral_set(prob.uncertainty).poly;
  const bool minimize = prob.sense == Sense::kMinimize;

  LpBuilder lp;
  // x keeps its bounds; the intercept z is free since y's bounds become
  // robust rows.
  for (int j = 0; j < n1; ++j) lp.add_variable(prob.lower(j), prob.upper(j), prob.cost(j));
  for (int j = 0; j < n2; ++j) lp.add_variable(-kInf, kInf, 0.0);
  Reformulation rf;
  rf.num_vars = n;
  rf.rule_z = n1;
  rf.rule_V = lp.add_variables(n2 * dim, -kInf, kInf);
  rf.epigraph = lp.add_variable(-kInf, kInf, 1.0);
  auto V = [&](int j, int k) { return rf.rule_V + j * dim + k; };

  // Row over v whose y part a_y is replaced by z + V u.
  auto add_rule_row = [&](const Vector& a, const std::vector<UCoef>& base, double rhs) {
    std::vector<UCoef> w = base;
    for (int j = 0; j < n2; ++j) {
      const double ay = a(n1 + j);
      if (ay == 0.0) continue;
      for (int k = 0; k < dim; ++k) w[k].vars.push_back({V(j, k), ay});
    }
    add_robust_row(lp, P, dense_terms(a), w, rhs);
  };

  for (const RobustRow& row : prob.rows) add_rule_row(row.a, row_ucoefs(row, dim), row.rhs);
  const std::vector<UCoef> none(dim);
  for (int r = 0; r < prob.det.A.rows(); ++r)
    add_rule_row(prob.det.A.row(r).transpose(), none, prob.det.b(r));
  for (int r = 0; r < prob.det.E.rows(); ++r) {
    const Vector e = prob.det.E.row(r).transpose();
    lp.add_eq(dense_terms(e), prob.det.e(r));
    for (int k = 0; k < dim; ++k) {
      Terms t;
      for (int j = 0; j < n2; ++j)
        if (e(n1 + j) != 0.0) t.push_back({V(j, k), e(n1 + j)});
      if (!t.empty()) lp.add_eq(t, 0.0);
    }
  }
  for (int j = 0; j < n2; ++j) {
    Vector unit = Vector::Zero(n);
    unit(n1 + j) = 1.0;
    if (prob.upper(n1 + j) < kInf) add_rule_row(unit, none, prob.upper(n1 + j));
    if (prob.lower(n1 + j) > -kInf) add_rule_row(-unit, none, -prob.lower(n1 + j));
  }
  // Epigraph: d'y(u) - tau <= 0 when minimising, tau - d'y(u) <= 0 when
  // maximising.
  {
    const double sign = minimize ? 1.0 : -1.0;
    Vector a = Vector::Zero(n);
    a.tail(n2) = sign * prob.cost.tail(n2);
    std::vector<UCoef> w(dim);
    for (int j = 0; j < n2; ++j) {
      if (a(n1 + j) == 0.0) continue;
      for (int k = 0; k < dim; ++k) w[k].vars.push_back({V(j, k), a(n1 + j)});
    }
    Terms det = dense_terms(a);
    det.push_back({rf.epigraph, -sign});
    add_robust_row(lp, P, det, w, 0.0);
  }
  LinearProgram out = lp.build(prob.sense);
  rf.lp = std::move(out);
  return rf;
}

AffineDecisionRule extract_rule(const RobustProblem& prob, const Reformulation& rf,
                                const Vector& solution) {
  AffineDecisionRule rule;
  const int dim = prob.uncertainty.dim;
  rule.z = solution.segment(rf.rule_z, prob.n2);
  rule.V = Matrix(prob.n2, dim);
  for (int j = 0; j < prob.n2; ++j)
    for (int k = 0; k < dim; ++k) rule.V(j, k) = solution(rf.rule_V + j * dim + k);
  return rule;
}

}  // namespace coupledro
