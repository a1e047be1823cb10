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

// Benders decomposition for fixed-recourse adjustable problems, written in
// minimisation form: min s c_x'x + max_u Q(x, u) with
//
//   Q(x, u) = min { s d'y : A_y y <= b(x, u), E_y y = e(x), y in bounds },
//
// where s = -1 for maximisation. b and e are affine in x for fixed u, so LP
// duals at (x_t, u) give cuts theta >= K + G'x valid for every x.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "internal.hpp"

namespace coupledro {

namespace detail {

namespace {

struct Cut {
  bool feasibility = false;
  Vector g;  // theta >= k + g'x, or g'x <= k for a feasibility cut
  double k = 0.0;
};

struct Evaluation {
  bool feasible = true;
  double value = 0.0;  // Q(x, u)
  Cut cut;
};

// The recourse LP for one problem; only b(x, u) and e(x) change per call.
class Recourse {
 public:
  explicit Recourse(const RobustProblem& p) : p_(p) {
    const int n1 = p.n1, n2 = p.n2;
    const int rows = static_cast<int>(p.rows.size()) + static_cast<int>(p.det.A.rows());
    Ay_ = Matrix::Zero(rows, n2);
    Ax_ = Matrix::Zero(rows, n1);
    rhs_ = Vector::Zero(rows);
    int r = 0;
    for (const RobustRow& row : p.rows) {
      Ay_.row(r) = row.a.tail(n2).transpose();
      Ax_.row(r) = row.a.head(n1).transpose();
      rhs_(r++) = row.rhs;
    }
    for (int q = 0; q < p.det.A.rows(); ++q) {
      Ay_.row(r) = p.det.A.row(q).tail(n2);
      Ax_.row(r) = p.det.A.row(q).head(n1);
      rhs_(r++) = p.det.b(q);
    }
    Ey_ = p.det.E.rightCols(n2);
    Ex_ = p.det.E.leftCols(n1);
    sign_ = p.sense == Sense::kMinimize ? 1.0 : -1.0;
    lower_ = p.lower.tail(n2);
    upper_ = p.upper.tail(n2);
  }

  double sign() const { return sign_; }

  // b(x, u) = b0(u) + G(u) x, one row per robust or deterministic row.
  void affine_rhs(const Vector& u, Vector& b0, Matrix& G) const {
    b0 = rhs_;
    G = -Ax_;
    for (size_t r = 0; r < p_.rows.size(); ++r)
      for (const UTerm& t : p_.rows[r].terms) {
        if (t.var < 0) b0(r) -= t.coef * u(t.k);
        else G(r, t.var) -= t.coef * u(t.k);
      }
  }

  LinearProgram program(const Vector& x, const Vector& u) const {
    Vector b0;
    Matrix G;
    affine_rhs(u, b0, G);
    LinearProgram lp;
    lp.sense = Sense::kMinimize;
    lp.cost = sign_ * p_.cost.tail(p_.n2);
    lp.A_ineq = Ay_;
    lp.b_ineq = b0 + G * x;
    lp.A_eq = Ey_;
    lp.b_eq = p_.det.e - Ex_ * x;
    lp.lower = lower_;
    lp.upper = upper_;
    return lp;
  }

  Evaluation evaluate(const Vector& x, const Vector& u) const {
    Vector b0;
    Matrix G;
    affine_rhs(u, b0, G);
    LinearProgram lp = program(x, u);
    LpSolution sol = solve_lp(lp);
    Evaluation ev;
    if (sol.status == LpStatus::kUnbounded)
      fail(ErrorCode::kUnbounded, "recourse problem is unbounded");
    if (sol.status == LpStatus::kInfeasible) {
      // lambda'b(x) + mu'e(x) >= min over bounds of (A'lambda + E'mu)'y.
      ev.feasible = false;
      const Vector w = Ay_.transpose() * sol.farkas_ineq + Ey_.transpose() * sol.farkas_eq;
      const double kappa = bound_minimum(w);
      if (!std::isfinite(kappa))
        fail(ErrorCode::kSolverFailure, "Farkas certificate uses an unbounded direction");
      ev.cut.feasibility = true;
      ev.cut.g = -(G.transpose() * sol.farkas_ineq) + Ex_.transpose() * sol.farkas_eq;
      ev.cut.k = b0.dot(sol.farkas_ineq) + p_.det.e.dot(sol.farkas_eq) - kappa;
      return ev;
    }
    ev.value = sol.objective;
    // Q(x') >= -lambda'b(x') - mu'e(x') + min over bounds of r'y.
    const double bounds = bound_minimum(sol.reduced_cost, 1e-9);
    ev.cut.k = -b0.dot(sol.ineq_dual) - p_.det.e.dot(sol.eq_dual) + bounds;
    ev.cut.g = -(G.transpose() * sol.ineq_dual) + Ex_.transpose() * sol.eq_dual;
    return ev;
  }

  // Coefficient of u in sum_r lambda_r b_r(x, u), negated: the direction
  // in which the dual bound grows.
  Vector dual_direction(const Vector& x, const Vector& lambda, int dim) const {
    Vector w = Vector::Zero(dim);
    for (size_t r = 0; r < p_.rows.size(); ++r) {
      if (lambda(r) == 0.0) continue;
      for (const UTerm& t : p_.rows[r].terms)
        w(t.k) += lambda(r) * t.coef * (t.var < 0 ? 1.0 : x(t.var));
    }
    return w;
  }

  LpSolution solve(const Vector& x, const Vector& u) const { return solve_lp(program(x, u)); }

  // Smallest violation t with A_y y <= b + t, |E_y y - e| <= t.
  double violation(const Vector& x, const Vector& u) const {
    LinearProgram base = program(x, u);
    const int n2 = p_.n2;
    LinearProgram lp;
    lp.sense = Sense::kMinimize;
    lp.cost = Vector::Zero(n2 + 1);
    lp.cost(n2) = 1.0;
    const int ri = static_cast<int>(base.A_ineq.rows()), re = static_cast<int>(base.A_eq.rows());
    lp.A_ineq = Matrix::Zero(ri + 2 * re, n2 + 1);
    lp.b_ineq = Vector(ri + 2 * re);
    lp.A_ineq.topLeftCorner(ri, n2) = base.A_ineq;
    lp.A_ineq.block(0, n2, ri, 1).setConstant(-1.0);
    lp.b_ineq.head(ri) = base.b_ineq;
    lp.A_ineq.block(ri, 0, re, n2) = base.A_eq;
    lp.A_ineq.block(ri + re, 0, re, n2) = -base.A_eq;
    lp.A_ineq.block(ri, n2, 2 * re, 1).setConstant(-1.0);
    lp.b_ineq.segment(ri, re) = base.b_eq;
    lp.b_ineq.segment(ri + re, re) = -base.b_eq;
    lp.lower = Vector(n2 + 1);
    lp.upper = Vector(n2 + 1);
    lp.lower << lower_, 0.0;
    lp.upper << upper_, kInf;
    LpSolution sol = solve_lp(lp);
    return sol.status == LpStatus::kOptimal ? sol.objective : kInf;
  }

 private:
  double bound_minimum(const Vector& w, double zero_tol = 0.0) const {
    double s = 0.0;
    for (int j = 0; j < w.size(); ++j) {
      if (std::abs(w(j)) <= zero_tol) continue;
      s += w(j) > 0.0 ? w(j) * lower_(j) : w(j) * upper_(j);
    }
    return s;
  }

  const RobustProblem& p_;
  Matrix Ay_, Ax_, Ey_, Ex_;
  Vector rhs_, lower_, upper_;
  double sign_ = 1.0;
};

struct InnerResult {
  Evaluation eval;
  Vector u;
};

InnerResult inner_exact(const Recourse& rec, const Vector& x, const VertexList& vertices) {
  InnerResult best;
  best.eval.value = -kInf;
  for (const Vector& u : vertices) {
    Evaluation ev = rec.evaluate(x, u);
    if (!ev.feasible) return {ev, u};
    if (ev.value > best.eval.value) best = {ev, u};
  }
  return best;
}

// Alternates between the recourse LP at fixed u and the support problem at
// fixed duals, from every start.
InnerResult inner_alternating(const Recourse& rec, const Vector& x, const ConvexSet& set,
                              const std::vector<Vector>& starts) {
  InnerResult best;
  best.eval.value = -kInf;
  const int dim = set.dim();
  for (const Vector& start : starts) {
    Vector u = start;
    double last = -kInf;
    for (int step = 0; step < 50; ++step) {
      Evaluation ev = rec.evaluate(x, u);
      if (!ev.feasible) return {ev, u};
      if (ev.value > best.eval.value) best = {ev, u};
      if (ev.value <= last + 1e-9 * (1.0 + std::abs(last))) break;
      last = ev.value;
      LpSolution sol = rec.solve(x, u);
      SupportResult s = support_function(set, rec.dual_direction(x, sol.ineq_dual, dim));
      if (!s.bounded) fail(ErrorCode::kUnbounded, "uncertainty set is unbounded");
      u = s.argmax;
    }
  }
  return best;
}

}  // namespace

double recourse_violation(const RobustProblem& prob, const Vector& x, const Vector& u) {
  return Recourse(prob).violation(x, u);
}

}  // namespace detail

SolveResult solve_benders(const RobustProblem& prob, const SolverOptions& opts) {
  using detail::Recourse;
  detail::Stopwatch watch;
  prob.validate();
  if (!prob.adaptive) fail(ErrorCode::kUnsupported, "Benders needs an adjustable problem");
  if (!prob.fixed_recourse())
    fail(ErrorCode::kUnsupported, "Benders needs fixed recourse (u must not multiply y)");
  const int n1 = prob.n1, n2 = prob.n2;
  const int dim = prob.uncertainty.dim;
  const ConvexSet set = intersect(prob.uncertainty);
  const Recourse rec(prob);
  const double s = rec.sign();

  // Exact inner problem over vertices when the set is a small polytope.
  bool exact = false;
  VertexList vertices;
  if (dim <= opts.exact_inner_dim) {
    try {
      const ConvexSet poly = polyhedral_set(prob.uncertainty);
      if (is_bounded(poly.poly)) {
        vertices = enumerate_vertices(poly.poly);
        exact = static_cast<int>(vertices.size()) <= opts.vertex_cap;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonPolyhedralAtomInRC) throw;
    }
  }
  std::vector<Vector> starts;
  if (!exact) {
    starts = hit_and_run(set, std::max(1, opts.starts), opts.seed);
    starts.insert(starts.begin(), chebyshev_center(set).center);
  }

  // Start from the static coupled solution.
  Vector x;
  {
    SolverOptions so;
    so.tol = 1e-7;
    so.audit_samples = 0;
    so.max_iter = opts.max_iter;
    try {
      x = solve_cutting_plane(prob.as_static(), so).x;
    } catch (const Error&) {
      x = prob.lower.head(n1).cwiseMax(-1e6).cwiseMin(prob.upper.head(n1));
      x = x.unaryExpr([](double v) { return std::isfinite(v) ? v : 0.0; });
    }
  }

  LpBuilder master;
  for (int j = 0; j < n1; ++j) master.add_variable(prob.lower(j), prob.upper(j), s * prob.cost(j));
  double theta_lb = 0.0;
  for (int j = 0; j < n2; ++j) {
    const double c = s * prob.cost(n1 + j);
    if (c > 0.0) theta_lb += c * prob.lower(n1 + j);
    else if (c < 0.0) theta_lb += c * prob.upper(n1 + j);
  }
  if (std::isnan(theta_lb)) theta_lb = -kInf;
  const int theta = master.add_variable(theta_lb, kInf, 1.0);
  for (int r = 0; r < prob.det.A.rows(); ++r)
    if (prob.det.A.row(r).tail(n2).cwiseAbs().maxCoeff() == 0.0)
      master.add_le(detail::dense_terms(prob.det.A.row(r).head(n1).transpose()), prob.det.b(r));
  for (int r = 0; r < prob.det.E.rows(); ++r)
    if (prob.det.E.row(r).tail(n2).cwiseAbs().maxCoeff() == 0.0)
      master.add_eq(detail::dense_terms(prob.det.E.row(r).head(n1).transpose()), prob.det.e(r));

  SolveResult r;
  r.method = Method::kBenders;
  double lb = -kInf, ub = kInf;
  Vector best_x;
  bool converged = false;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    r.iterations = iter + 1;
    detail::InnerResult in = exact ? detail::inner_exact(rec, x, vertices)
                                   : detail::inner_alternating(rec, x, set, starts);
    r.cuts.points.push_back(in.u);
    r.cuts.rows.push_back(-1);
    LpBuilder::Terms t;
    for (int j = 0; j < n1; ++j)
      if (in.eval.cut.g(j) != 0.0) t.push_back({j, in.eval.cut.g(j)});
    if (in.eval.feasible) {
      const double upper = s * prob.cost.head(n1).dot(x) + in.eval.value;
      if (upper < ub) {
        ub = upper;
        best_x = x;
      }
      // theta - g'x >= k.
      for (auto& term : t) term.second = -term.second;
      t.push_back({theta, 1.0});
      master.add_ge(t, in.eval.cut.k);
    } else {
      master.add_le(t, in.eval.cut.k);
    }
    if (!exact) starts.push_back(in.u);

    LpSolution sol = solve_lp(master.build(Sense::kMinimize));
    if (sol.status == LpStatus::kInfeasible)
      fail(ErrorCode::kInfeasible, "no first-stage decision admits a recourse");
    if (sol.status == LpStatus::kUnbounded)
      fail(ErrorCode::kSolverFailure, "Benders master is unbounded");
    lb = sol.objective;
    r.history.push_back(s * lb);
    x = sol.primal.head(n1);
    if (ub - lb <= opts.tol * std::max(1.0, std::abs(ub))) {
      converged = true;
      break;
    }
  }
  if (best_x.size() == 0) fail(ErrorCode::kIterationLimit, "no feasible first stage found");
  r.objective = s * lb;
  r.x = best_x;
  if (!converged) {
    r.status = SolveStatus::kIterationLimit;
    r.note = "iteration limit reached";
  } else if (!exact) {
    r.status = SolveStatus::kInexact;
    r.note = "lower bound, inexact inner";
  }
  detail::finish(prob, r, opts, watch);
  return r;
}

}  // namespace coupledro
