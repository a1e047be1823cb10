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
#include <vector>

#include "coupledro/polyhedra.hpp"

namespace coupledro {

namespace {

constexpr double kRadiusCap = 1e6;

}  // namespace

bool as_box(const Polyhedron& p, Vector& lo, Vector& hi) {
  const int n = p.dim();
  lo = Vector::Constant(n, -kInf);
  hi = Vector::Constant(n, kInf);
  for (int r = 0; r < p.rows(); ++r) {
    int idx = -1;
    for (int j = 0; j < n; ++j) {
      if (p.A(r, j) == 0.0) continue;
      if (idx >= 0) return false;
      idx = j;
    }
    if (idx < 0) {
      if (p.b(r) < 0.0) fail(ErrorCode::kEmptyCoupledSet, "row 0 <= negative");
      continue;
    }
    const double a = p.A(r, idx);
    if (a > 0) hi(idx) = std::min(hi(idx), p.b(r) / a);
    else lo(idx) = std::max(lo(idx), p.b(r) / a);
  }
  return true;
}

namespace {

// max y'u over {lo <= u <= hi, ||u|| <= radius}: bisection on the ball
// multiplier lambda with u_i = clamp(y_i / (2 lambda), lo_i, hi_i).
SupportResult box_ball_support(const Vector& y, const Vector& lo, const Vector& hi,
                               double radius) {
  const int n = static_cast<int>(y.size());
  for (int i = 0; i < n; ++i)
    if (lo(i) > hi(i)) fail(ErrorCode::kEmptyCoupledSet, "empty box");
  auto at = [&](double lambda) {
    Vector u(n);
    for (int i = 0; i < n; ++i) {
      double v;
      if (lambda == 0.0) v = y(i) > 0 ? hi(i) : (y(i) < 0 ? lo(i) : 0.0);
      else v = y(i) / (2.0 * lambda);
      u(i) = std::clamp(v, lo(i), hi(i));
    }
    return u;
  };
  Vector u0 = at(0.0);
  SupportResult res;
  if (u0.allFinite() && u0.norm() <= radius) {
    res.value = y.dot(u0);
    res.argmax = u0;
    return res;
  }
  Vector far = Vector(n);
  for (int i = 0; i < n; ++i) far(i) = std::clamp(0.0, lo(i), hi(i));
  if (far.norm() > radius * (1 + 1e-12))
    fail(ErrorCode::kEmptyCoupledSet, "box and ball do not intersect");
  double lo_l = 0.0, hi_l = std::max(1e-300, y.norm() / (2.0 * std::max(radius, 1e-300)));
  for (int k = 0; k < 400 && at(hi_l).norm() > radius; ++k) hi_l *= 2.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo_l + hi_l);
    if (mid <= lo_l || mid >= hi_l) break;
    if (at(mid).norm() > radius) lo_l = mid;
    else hi_l = mid;
    if (hi_l - lo_l <= 1e-15 * hi_l) break;
  }
  Vector u = at(hi_l);
  const double nu = u.norm();
  if (nu > radius && nu > 0) u *= radius / nu;
  res.value = y.dot(u);
  res.argmax = u;
  return res;
}

}  // namespace

void add_membership(LpBuilder& builder, std::vector<SocConstraint>& cones,
                    const ConvexSet& set, int first) {
  const Polyhedron& p = set.poly;
  for (int r = 0; r < p.rows(); ++r) {
    LpBuilder::Terms t;
    for (int j = 0; j < p.dim(); ++j)
      if (p.A(r, j) != 0.0) t.push_back({first + j, p.A(r, j)});
    builder.add_le(t, p.b(r));
  }
  for (const BallConstraint& b : set.balls) {
    SocConstraint c;
    for (int k = 0; k < b.length; ++k) c.vars.push_back(first + b.offset + k);
    c.radius = b.radius;
    cones.push_back(c);
  }
}

LpSolution solve_conic(const LpBuilder& builder, const std::vector<SocConstraint>& cones,
                       Sense sense) {
  ConicProgram prog;
  prog.lp = builder.build(sense);
  prog.cones = cones;
  // Slopes refer to the full variable vector; pad them if built early.
  for (SocConstraint& c : prog.cones)
    if (c.slope.size() && c.slope.size() < prog.lp.num_vars()) {
      Vector s = Vector::Zero(prog.lp.num_vars());
      s.head(c.slope.size()) = c.slope;
      c.slope = s;
    }
  return solve_conic(prog);
}

bool contains(const ConvexSet& set, const Vector& u, double tol) {
  if (u.size() != set.dim()) return false;
  if (set.poly.rows() > 0) {
    Vector au = set.poly.A * u;
    for (int r = 0; r < au.size(); ++r)
      if (au(r) > set.poly.b(r) + tol * (1.0 + std::abs(set.poly.b(r)))) return false;
  }
  for (const BallConstraint& b : set.balls)
    if (u.segment(b.offset, b.length).norm() > b.radius + tol * (1.0 + b.radius))
      return false;
  return true;
}

SupportResult support_function(const ConvexSet& set, const Vector& y) {
  const int n = set.dim();
  if (y.size() != n) fail(ErrorCode::kMalformedProgram, "support direction size");
  SupportResult res;
  // Balls only, on disjoint scopes.
  if (set.poly.rows() == 0 && !set.balls.empty()) {
    std::vector<int> owner(n, -1);
    bool disjoint = true;
    for (size_t k = 0; k < set.balls.size(); ++k)
      for (int i = 0; i < set.balls[k].length; ++i) {
        int& o = owner[set.balls[k].offset + i];
        if (o >= 0) disjoint = false;
        o = static_cast<int>(k);
      }
    if (disjoint) {
      res.argmax = Vector::Zero(n);
      for (int i = 0; i < n; ++i)
        if (owner[i] < 0 && y(i) != 0.0) {
          res.bounded = false;
          res.value = kInf;
          return res;
        }
      for (const BallConstraint& b : set.balls) {
        Vector ys = y.segment(b.offset, b.length);
        const double ny = ys.norm();
        res.value += b.radius * ny;
        if (ny > 0) res.argmax.segment(b.offset, b.length) = b.radius * ys / ny;
      }
      return res;
    }
  }
  Vector lo, hi;
  if (set.balls.size() == 1 && set.balls[0].offset == 0 && set.balls[0].length == n &&
      as_box(set.poly, lo, hi)) {
    return box_ball_support(y, lo, hi, set.balls[0].radius);
  }
  LpBuilder b;
  const int first = b.add_variables(n, -kInf, kInf);
  for (int i = 0; i < n; ++i) b.set_cost(first + i, y(i));
  std::vector<SocConstraint> cones;
  add_membership(b, cones, set, first);
  LpSolution sol = solve_conic(b, cones, Sense::kMaximize);
  if (sol.status == LpStatus::kInfeasible)
    fail(ErrorCode::kEmptyCoupledSet, "support function of an empty set");
  if (sol.status == LpStatus::kUnbounded) {
    res.bounded = false;
    res.value = kInf;
    res.argmax = sol.ray;
    return res;
  }
  res.value = sol.objective;
  res.argmax = sol.primal;
  return res;
}

bool is_empty(const ConvexSet& set) {
  const int n = set.dim();
  LpBuilder b;
  const int first = b.add_variables(n, -kInf, kInf);
  if (set.balls.empty()) {
    std::vector<SocConstraint> none;
    add_membership(b, none, set, first);
    return solve_lp(b.build(Sense::kMinimize)).status == LpStatus::kInfeasible;
  }
  // min t subject to ||u_S|| <= radius + t for every ball.
  const int t = b.add_variable(-kInf, kInf, 1.0);
  ConvexSet poly_only;
  poly_only.poly = set.poly;
  std::vector<SocConstraint> cones;
  add_membership(b, cones, poly_only, first);
  double max_radius = 0.0;
  for (const BallConstraint& bl : set.balls) max_radius = std::max(max_radius, bl.radius);
  b.add_ge({{t, 1.0}}, -1.0 - max_radius);
  for (const BallConstraint& bl : set.balls) {
    SocConstraint c;
    for (int k = 0; k < bl.length; ++k) c.vars.push_back(first + bl.offset + k);
    c.radius = bl.radius;
    c.slope = Vector::Zero(n + 1);
    c.slope(t) = 1.0;
    cones.push_back(c);
  }
  LpSolution sol = solve_conic(b, cones, Sense::kMinimize);
  if (sol.status == LpStatus::kInfeasible) return true;
  if (sol.status == LpStatus::kUnbounded) return false;
  return sol.objective > 1e-9;
}

ConvexSet intersect(const UncertaintySpec& spec) {
  ConvexSet set = flatten(spec);
  if (is_empty(set)) fail(ErrorCode::kEmptyCoupledSet, "U ∩ C is empty");
  return set;
}

double gauge(const ConvexSet& set, const Vector& w, double tol) {
  if (w.size() != set.dim()) fail(ErrorCode::kMalformedProgram, "gauge argument size");
  double g = 0.0;
  const Polyhedron& p = set.poly;
  if (p.rows() > 0) {
    Vector aw = p.A * w;
    for (int r = 0; r < p.rows(); ++r) {
      const double scale = 1.0 + p.A.row(r).cwiseAbs().maxCoeff();
      if (p.b(r) < -tol * scale)
        fail(ErrorCode::kOriginNotContained, "origin violates a halfspace");
      if (p.b(r) <= tol * scale) {
        if (aw(r) > tol * scale * (1.0 + w.lpNorm<Eigen::Infinity>())) return kInf;
        continue;
      }
      g = std::max(g, aw(r) / p.b(r));
    }
  }
  for (const BallConstraint& b : set.balls) {
    const double nw = w.segment(b.offset, b.length).norm();
    if (b.radius <= 0.0) {
      if (nw > tol) return kInf;
      continue;
    }
    g = std::max(g, nw / b.radius);
  }
  return g;
}

double max_scaling(const ConvexSet& set, const Vector& v) {
  const double g = gauge(set, v);
  return g == 0.0 ? kInf : 1.0 / g;
}

double max_scaling_into_down_hull(const ConvexSet& set, const Vector& v) {
  const int n = set.dim();
  if (v.size() != n) fail(ErrorCode::kMalformedProgram, "scaling argument size");
  LpBuilder b;
  const int t = b.add_variable(0.0, kInf, 1.0);
  const int s = b.add_variables(n, -kInf, kInf);
  for (int i = 0; i < n; ++i)
    if (v(i) != 0.0) b.add_le({{t, v(i)}, {s + i, -1.0}}, 0.0);
  std::vector<SocConstraint> cones;
  add_membership(b, cones, set, s);
  LpSolution sol = solve_conic(b, cones, Sense::kMaximize);
  if (sol.status == LpStatus::kInfeasible) fail(ErrorCode::kEmptyCoupledSet, "empty set");
  if (sol.status == LpStatus::kUnbounded) return kInf;
  return sol.objective;
}

double max_scaling_into_projection(const ConvexSet& set, const Block& block,
                                   const Vector& v) {
  const int n = set.dim();
  if (v.size() != block.length) fail(ErrorCode::kMalformedProgram, "scaling argument size");
  LpBuilder b;
  const int t = b.add_variable(0.0, kInf, 1.0);
  const int u = b.add_variables(n, -kInf, kInf);
  for (int i = 0; i < block.length; ++i)
    b.add_eq({{u + block.offset + i, 1.0}, {t, -v(i)}}, 0.0);
  std::vector<SocConstraint> cones;
  add_membership(b, cones, set, u);
  LpSolution sol = solve_conic(b, cones, Sense::kMaximize);
  if (sol.status == LpStatus::kInfeasible) return 0.0;
  if (sol.status == LpStatus::kUnbounded) return kInf;
  return sol.objective;
}

AffineHull affine_hull(const ConvexSet& set, double tol) {
  const int n = set.dim();
  const Polyhedron& p = set.poly;
  AffineHull hull;
  hull.implicit_rows.assign(p.rows(), false);
  std::vector<Eigen::RowVectorXd> eq_rows;
  for (int r = 0; r < p.rows(); ++r) {
    Vector a = p.A.row(r).transpose();
    if (a.norm() == 0.0) continue;
    SupportResult s = support_function(set, -a);
    const double min_val = -s.value;
    if (s.bounded && p.b(r) - min_val <= tol * (1.0 + std::abs(p.b(r)))) {
      hull.implicit_rows[r] = true;
      eq_rows.push_back(a.transpose());
    }
  }
  for (const BallConstraint& b : set.balls) {
    if (b.radius > tol) continue;
    for (int k = 0; k < b.length; ++k) {
      Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(n);
      e(b.offset + k) = 1.0;
      eq_rows.push_back(e);
    }
  }
  if (eq_rows.empty()) {
    hull.directions = Matrix::Identity(n, n);
    return hull;
  }
  Matrix E(eq_rows.size(), n);
  for (size_t k = 0; k < eq_rows.size(); ++k) E.row(k) = eq_rows[k];
  Eigen::JacobiSVD<Matrix> svd(E, Eigen::ComputeFullV);
  const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (int k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > 1e-10 * std::max(1.0, smax)) ++rank;
  hull.directions = svd.matrixV().rightCols(n - rank);
  return hull;
}

namespace {

ChebyshevResult chebyshev_with(const ConvexSet& set, const Matrix& D,
                               const std::vector<bool>& implicit) {
  const int n = set.dim();
  const Polyhedron& p = set.poly;
  LpBuilder b;
  const int c = b.add_variables(n, -kInf, kInf);
  const int r = b.add_variable(0.0, kRadiusCap, 1.0);
  for (int i = 0; i < p.rows(); ++i) {
    LpBuilder::Terms t;
    for (int j = 0; j < n; ++j)
      if (p.A(i, j) != 0.0) t.push_back({c + j, p.A(i, j)});
    if (!implicit.empty() && implicit[i]) {
      b.add_le(t, p.b(i));
      continue;
    }
    Vector a = p.A.row(i).transpose();
    const double na = (D * (D.transpose() * a)).norm();
    if (na > 0) t.push_back({r, na});
    b.add_le(t, p.b(i));
  }
  std::vector<SocConstraint> cones;
  for (const BallConstraint& bl : set.balls) {
    SocConstraint cone;
    for (int k = 0; k < bl.length; ++k) cone.vars.push_back(c + bl.offset + k);
    cone.radius = bl.radius;
    cone.slope = Vector::Zero(n + 1);
    cone.slope(r) = -1.0;
    cones.push_back(cone);
  }
  LpSolution sol = solve_conic(b, cones, Sense::kMaximize);
  if (sol.status != LpStatus::kOptimal) fail(ErrorCode::kEmptyCoupledSet, "no interior point");
  ChebyshevResult res;
  res.center = sol.primal.head(n);
  res.radius = sol.primal(r);
  return res;
}

}  // namespace

ChebyshevResult chebyshev_center(const ConvexSet& set) {
  const int n = set.dim();
  ChebyshevResult full = chebyshev_with(set, Matrix::Identity(n, n), {});
  if (full.radius > 1e-7) return full;
  AffineHull hull = affine_hull(set);
  if (hull.directions.cols() == 0) return full;
  return chebyshev_with(set, hull.directions, hull.implicit_rows);
}

SymmetryResult symmetry_point(const Polyhedron& p) {
  const int n = p.dim();
  ConvexSet set = make_polyhedral(p);
  // m_i = min over P of a_i'x; then sym(u) >= alpha iff
  // (1 + alpha) a_i'u <= b_i + alpha m_i, linear in w = (1 + alpha) u.
  Vector m(p.rows());
  bool bounded = true;
  for (int r = 0; r < p.rows(); ++r) {
    SupportResult s = support_function(set, -p.A.row(r).transpose());
    if (!s.bounded) bounded = false;
    m(r) = -s.value;
  }
  SymmetryResult res;
  if (!bounded) {
    res.point = chebyshev_center(set).center;
    res.value = 0.0;
    return res;
  }
  LpBuilder b;
  const int w = b.add_variables(n, -kInf, kInf);
  const int alpha = b.add_variable(0.0, kInf, 1.0);
  for (int r = 0; r < p.rows(); ++r) {
    LpBuilder::Terms t;
    for (int j = 0; j < n; ++j)
      if (p.A(r, j) != 0.0) t.push_back({w + j, p.A(r, j)});
    if (m(r) != 0.0) t.push_back({alpha, -m(r)});
    b.add_le(t, p.b(r));
  }
  LpSolution sol = solve_lp(b.build(Sense::kMaximize));
  if (sol.status == LpStatus::kInfeasible) fail(ErrorCode::kEmptyCoupledSet, "empty polyhedron");
  if (sol.status == LpStatus::kUnbounded) {
    res.point = chebyshev_center(set).center;
    res.value = kInf;
    return res;
  }
  const double a = sol.primal(alpha);
  res.value = a;
  res.point = sol.primal.head(n) / (1.0 + a);
  return res;
}

}  // namespace coupledro
