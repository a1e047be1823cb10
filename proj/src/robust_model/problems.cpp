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

#include "coupledro/robust_model.hpp"
#include "coupledro/shrinkage.hpp"

namespace coupledro {

namespace {

void need(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::kMalformedProgram, what);
}

// Accepts an empty matrix as "no columns set" and checks the shape otherwise.
Matrix or_zero(const Matrix& m, int rows, int cols, const char* name) {
  if (m.size() == 0) return Matrix::Zero(rows, cols);
  need(m.rows() == rows && m.cols() == cols, std::string(name) + " has the wrong shape");
  return m;
}

Vector or_value(const Vector& v, int n, double value, const char* name) {
  if (v.size() == 0) return Vector::Constant(n, value);
  need(v.size() == n, std::string(name) + " has the wrong size");
  return v;
}

void fill_common(RobustProblem& out, const Vector& c, const Vector& d, bool adaptive,
                 const DetConstraints& det, const UncertaintySpec& uncertainty,
                 const std::optional<UncertaintySpec>& baseline) {
  out.n1 = static_cast<int>(c.size());
  out.n2 = static_cast<int>(d.size());
  const int n = out.n1 + out.n2;
  out.adaptive = adaptive;
  out.cost = Vector(n);
  out.cost << c, d;
  out.det.A = det.A.size() == 0 ? Matrix(0, n) : det.A;
  out.det.b = det.b.size() == 0 ? Vector(0) : det.b;
  out.det.E = det.E.size() == 0 ? Matrix(0, n) : det.E;
  out.det.e = det.e.size() == 0 ? Vector(0) : det.e;
  out.uncertainty = uncertainty;
  out.baseline = baseline ? *baseline : uncertainty.without_coupling();
}

}  // namespace

const char* family_name(Family family) {
  switch (family) {
    case Family::kRhs: return "rhs";
    case Family::kCoeff: return "coeff";
    case Family::kGeneral: return "general";
  }
  return "unknown";
}

void RobustProblem::validate() const {
  const int n = num_vars();
  need(n1 >= 0 && n2 >= 0 && n > 0, "problem needs at least one variable");
  need(cost.size() == n, "cost size");
  need(lower.size() == n && upper.size() == n, "bounds size");
  for (int j = 0; j < n; ++j) need(!(lower(j) > upper(j)), "lower bound above upper bound");
  need(det.A.cols() == n && det.A.rows() == det.b.size(), "deterministic inequality shape");
  need(det.E.cols() == n && det.E.rows() == det.e.size(), "deterministic equality shape");
  uncertainty.validate();
  baseline.validate();
  need(baseline.dim == uncertainty.dim, "baseline and coupled sets differ in dimension");
  for (size_t r = 0; r < rows.size(); ++r) {
    const RobustRow& row = rows[r];
    need(row.a.size() == n, "row " + std::to_string(r) + " coefficient size");
    need(std::isfinite(row.rhs), "row " + std::to_string(r) + " rhs is not finite");
    for (const UTerm& t : row.terms) {
      need(t.k >= 0 && t.k < uncertainty.dim, "row " + std::to_string(r) + " term index");
      need(t.var >= -1 && t.var < n, "row " + std::to_string(r) + " term variable");
      need(std::isfinite(t.coef), "row " + std::to_string(r) + " term coefficient");
    }
  }
}

bool RobustProblem::fixed_recourse() const {
  if (!adaptive) return true;
  for (const RobustRow& row : rows)
    for (const UTerm& t : row.terms)
      if (t.var >= n1) return false;
  return true;
}

RobustProblem RobustProblem::with_uncertainty(const UncertaintySpec& spec) const {
  RobustProblem p = *this;
  p.uncertainty = spec;
  return p;
}

RobustProblem RobustProblem::as_static() const {
  RobustProblem p = *this;
  p.adaptive = false;
  return p;
}

RobustProblem lower(const RhsRobustProblem& prob) {
  const int n1 = static_cast<int>(prob.c.size()), n2 = static_cast<int>(prob.d.size());
  const int m = prob.uncertainty.num_blocks();
  RobustProblem out;
  out.family = Family::kRhs;
  out.sense = Sense::kMinimize;
  fill_common(out, prob.c, prob.d, prob.adaptive, prob.det, prob.uncertainty, prob.baseline);
  for (const Block& b : prob.uncertainty.blocks)
    need(b.length == 1, "right-hand-side uncertainty needs blocks of width 1");
  need(prob.uncertainty.dim == m, "uncertainty dimension must equal the row count");
  const Matrix A = or_zero(prob.A, m, n1, "A");
  const Matrix G = or_zero(prob.G, m, n2, "G");
  const Vector b = or_value(prob.b, m, 0.0, "b");
  out.lower = or_value(prob.lower, n1 + n2, 0.0, "lower");
  out.upper = or_value(prob.upper, n1 + n2, kInf, "upper");
  for (int i = 0; i < m; ++i) {
    RobustRow row;
    row.a = Vector(n1 + n2);
    row.a << -A.row(i).transpose(), -G.row(i).transpose();
    row.rhs = -b(i);
    row.terms.push_back({prob.uncertainty.blocks[i].offset, -1, 1.0});
    out.rows.push_back(std::move(row));
  }
  out.validate();
  return out;
}

RobustProblem lower(const CoeffRobustProblem& prob) {
  const int n1 = static_cast<int>(prob.c.size()), n2 = static_cast<int>(prob.d.size());
  const int n = n1 + n2;
  const int m = prob.uncertainty.num_blocks();
  RobustProblem out;
  out.family = Family::kCoeff;
  out.sense = Sense::kMaximize;
  fill_common(out, prob.c, prob.d, prob.adaptive, prob.det, prob.uncertainty, prob.baseline);
  const Matrix A = or_zero(prob.A, m, n1, "A");
  const Matrix G = or_zero(prob.G, m, n2, "G");
  need(prob.b.size() == m, "b must have one entry per block");
  out.lower = or_value(prob.lower, n, -kInf, "lower");
  out.upper = or_value(prob.upper, n, kInf, "upper");
  need(prob.support.empty() || static_cast<int>(prob.support.size()) == m, "support size");
  for (int i = 0; i < m; ++i) {
    const Block& blk = prob.uncertainty.blocks[i];
    std::vector<int> vars;
    if (prob.support.empty()) {
      need(blk.length <= n, "block wider than the decision vector");
      for (int j = 0; j < blk.length; ++j) vars.push_back(j);
    } else {
      vars = prob.support[i];
      need(static_cast<int>(vars.size()) == blk.length, "support size differs from block width");
    }
    RobustRow row;
    row.a = Vector(n);
    row.a << A.row(i).transpose(), G.row(i).transpose();
    row.rhs = prob.b(i);
    for (int j = 0; j < blk.length; ++j) {
      need(vars[j] >= 0 && vars[j] < n, "support index out of range");
      row.terms.push_back({blk.offset + j, vars[j], 1.0});
    }
    out.rows.push_back(std::move(row));
  }
  out.validate();
  return out;
}

Vector row_coefficients(const RobustRow& row, const Vector& v, int dim) {
  Vector w = Vector::Zero(dim);
  for (const UTerm& t : row.terms) w(t.k) += t.coef * (t.var < 0 ? 1.0 : v(t.var));
  return w;
}

double row_violation(const RobustRow& row, const Vector& v, const Vector& u) {
  double s = row.a.dot(v) - row.rhs;
  for (const UTerm& t : row.terms) s += t.coef * u(t.k) * (t.var < 0 ? 1.0 : v(t.var));
  return s;
}

double det_violation(const RobustProblem& prob, const Vector& v) {
  double worst = 0.0;
  if (prob.det.A.rows() > 0) worst = std::max(worst, (prob.det.A * v - prob.det.b).maxCoeff());
  if (prob.det.E.rows() > 0)
    worst = std::max(worst, (prob.det.E * v - prob.det.e).cwiseAbs().maxCoeff());
  for (int j = 0; j < v.size(); ++j) {
    worst = std::max(worst, prob.lower(j) - v(j));
    worst = std::max(worst, v(j) - prob.upper(j));
  }
  return worst;
}

double objective_value(const RobustProblem& prob, const Vector& v) { return prob.cost.dot(v); }

ConvexSet polyhedral_set(const UncertaintySpec& spec) {
  ConvexSet full = intersect(spec);
  if (full.polyhedral()) return full;
  ConvexSet poly = make_polyhedral(full.poly);
  for (const BallConstraint& ball : full.balls) {
    double reach = kInf;
    try {
      reach = max_block_norm(poly, ball.offset, ball.length);
    } catch (const Error&) {
      reach = kInf;
    }
    if (!(reach <= ball.radius * (1.0 + 1e-9) + 1e-12))
      fail(ErrorCode::kNonPolyhedralAtomInRC,
           "a Euclidean ball restricts the set; use the cutting-plane solver");
  }
  return poly;
}

TranslatedProblem canonical_translate(const RobustProblem& prob) {
  TranslatedProblem out;
  out.problem = prob;
  const int dim = prob.uncertainty.dim;
  if (contains(intersect(prob.uncertainty), Vector::Zero(dim), 1e-12)) {
    out.shift = Vector::Zero(dim);
    return out;
  }
  Translation t = translate_by_symmetry_point(prob.baseline, prob.uncertainty);
  out.shift = t.shift;
  out.orthant_shift = t.orthant_shift;
  out.problem.uncertainty = t.Ubar;
  out.problem.baseline = t.U;
  for (RobustRow& row : out.problem.rows) {
    for (const UTerm& term : row.terms) {
      const double moved = term.coef * t.shift(term.k);
      if (term.var < 0) row.rhs -= moved;
      else row.a(term.var) += moved;
    }
  }
  return out;
}

UncertaintySpec intro_box() {
  UncertaintySpec s = make_block_spec(2, 1);
  for (int i = 0; i < 2; ++i) s.cw_atoms[i].push_back(Box{Vector::Zero(1), Vector::Ones(1)});
  return s;
}

UncertaintySpec intro_scenario_a(double eta) {
  UncertaintySpec s = intro_box();
  s.coupling_atoms.push_back(BudgetRow{Vector::Ones(2), eta});
  return s;
}

UncertaintySpec intro_scenario_b(double alpha, double beta) {
  UncertaintySpec s = intro_box();
  Matrix A(2, 2);
  A << 1.0, -1.0, -1.0, 1.0;
  Vector b(2);
  b << -alpha, beta;
  s.coupling_atoms.push_back(Halfspaces{A, b});
  return s;
}

RhsRobustProblem supply_chain_intro_rhs(const UncertaintySpec& coupled, bool adaptive,
                                        double c11, double c22, double s11, double s12,
                                        double s22, double t, double p) {
  // v = (x11, x22, y11, y12, y22).
  RhsRobustProblem prob;
  prob.c = Vector(2);
  prob.c << c11, c22;
  prob.d = Vector(3);
  prob.d << s11, s12, s22;
  prob.A = Matrix::Zero(2, 2);
  prob.G = Matrix(2, 3);
  prob.G << 1.0, 0.0, 0.0, 0.0, 1.0, 1.0;
  prob.uncertainty = coupled;
  prob.baseline = coupled.without_coupling();
  prob.adaptive = adaptive;
  prob.det.A = Matrix(2, 5);
  prob.det.A << -1.0, 0.0, 1.0, 1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 1.0;
  prob.det.b = Vector::Zero(2);
  prob.lower = Vector::Zero(5);
  prob.upper = Vector(5);
  prob.upper << t, t, p, p, p;
  return prob;
}

RobustProblem supply_chain_intro(const UncertaintySpec& coupled, bool adaptive, double c11,
                                 double c22, double s11, double s12, double s22, double t,
                                 double p) {
  return lower(supply_chain_intro_rhs(coupled, adaptive, c11, c22, s11, s12, s22, t, p));
}

}  // namespace coupledro
