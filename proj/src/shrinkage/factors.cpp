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

#include "coupledro/shrinkage.hpp"

namespace coupledro {

namespace {

constexpr double kTol = 1e-9;
constexpr int kNestingSamples = 10000;

Vector unit(int n, int i, double sign = 1.0) {
  Vector e = Vector::Zero(n);
  e(i) = sign;
  return e;
}

double inv(double g) { return g == 0.0 ? kInf : (std::isinf(g) ? 0.0 : 1.0 / g); }

// Ubar restricted to the atoms of one block, embedded in the full space.
ConvexSet block_atoms_set(const UncertaintySpec& spec, int block) {
  ConvexSet set;
  set.poly.A = Matrix(0, spec.dim);
  set.poly.b = Vector(0);
  const Block& b = spec.blocks[block];
  for (const SetAtom& a : spec.cw_atoms[block]) append_atom(set, a, b.offset, b.length);
  return set;
}

// Polyhedral part plus |u_T| <= radius on the ball's scope, which keeps
// the intersection with the ball unchanged.
Polyhedron with_ball_cube(const Polyhedron& p, const BallConstraint& ball) {
  Polyhedron q = p;
  const int n = p.dim();
  const int r0 = q.rows();
  q.A.conservativeResize(r0 + 2 * ball.length, n);
  q.b.conservativeResize(r0 + 2 * ball.length);
  q.A.bottomRows(2 * ball.length).setZero();
  for (int k = 0; k < ball.length; ++k) {
    q.A(r0 + 2 * k, ball.offset + k) = 1.0;
    q.A(r0 + 2 * k + 1, ball.offset + k) = -1.0;
    q.b(r0 + 2 * k) = ball.radius;
    q.b(r0 + 2 * k + 1) = ball.radius;
  }
  return q;
}

double max_sq_norm_polyhedral(const Polyhedron& p, int offset, int length) {
  Vector lo, hi;
  if (as_box(p, lo, hi)) {
    double s = 0.0;
    for (int k = 0; k < length; ++k) {
      const double m = std::max(std::abs(lo(offset + k)), std::abs(hi(offset + k)));
      if (std::isinf(m)) return kInf;
      s += m * m;
    }
    return s;
  }
  if (!is_bounded(p)) return kInf;
  double best = 0.0;
  for (const Vector& v : enumerate_vertices(p))
    best = std::max(best, v.segment(offset, length).squaredNorm());
  return best;
}

bool is_block_width_one(const UncertaintySpec& s) {
  for (const Block& b : s.blocks)
    if (b.length != 1) return false;
  return true;
}

void check_same_layout(const UncertaintySpec& U, const UncertaintySpec& Ubar) {
  U.validate();
  Ubar.validate();
  if (U.dim != Ubar.dim || U.num_blocks() != Ubar.num_blocks())
    fail(ErrorCode::kMalformedProgram, "U and Ubar have different layouts");
  for (int i = 0; i < U.num_blocks(); ++i)
    if (U.blocks[i].offset != Ubar.blocks[i].offset ||
        U.blocks[i].length != Ubar.blocks[i].length)
      fail(ErrorCode::kMalformedProgram, "U and Ubar have different blocks");
}

}  // namespace

const char* factor_source_name(FactorSource source) {
  return source == FactorSource::kClosedForm ? "closed_form" : "lp_computed";
}

Vector projection_bounds(const UncertaintySpec& spec, bool use_down_hull) {
  ConvexSet set = intersect(spec);
  const int n = spec.dim;
  Vector d(n);
  for (int i = 0; i < n; ++i) {
    if (use_down_hull) {
      SupportResult low = support_function(set, unit(n, i, -1.0));
      if (!low.bounded || low.value > kTol)
        fail(ErrorCode::kNotDownClosedInput, "set leaves the nonnegative orthant");
    }
    SupportResult s = support_function(set, unit(n, i));
    if (!s.bounded) fail(ErrorCode::kUnbounded, "coordinate " + std::to_string(i) + " unbounded");
    d(i) = s.value;
  }
  return d;
}

double max_block_norm(const ConvexSet& set, int offset, int length) {
  if (set.balls.empty()) return std::sqrt(max_sq_norm_polyhedral(set.poly, offset, length));
  if (set.balls.size() == 1) {
    const BallConstraint& ball = set.balls[0];
    const bool inside =
        offset >= ball.offset && offset + length <= ball.offset + ball.length;
    // With T = S, or a box containing the origin whose remaining
    // coordinates can be zeroed, the answer is min(radius, max over P).
    Vector lo, hi;
    const bool same = offset == ball.offset && length == ball.length;
    const bool zero_box = as_box(set.poly, lo, hi) && (lo.array() <= 0.0).all() &&
                          (hi.array() >= 0.0).all();
    if (inside && (same || zero_box) && contains(make_polyhedral(set.poly), Vector::Zero(set.dim()))) {
      const double m = max_sq_norm_polyhedral(with_ball_cube(set.poly, ball), offset, length);
      if (std::isinf(m)) fail(ErrorCode::kUnsupported, "norm maximisation over an unbounded set");
      return std::min(ball.radius, std::sqrt(m));
    }
    // A ball on coordinates disjoint from S whose polyhedral part leaves S
    // decoupled from it does not change the maximum when the box contains 0.
    const bool disjoint = offset + length <= ball.offset || ball.offset + ball.length <= offset;
    if (disjoint && zero_box) return std::sqrt(max_sq_norm_polyhedral(set.poly, offset, length));
  }
  fail(ErrorCode::kUnsupported, "norm maximisation over this combination of balls");
}

double sup_gauge(const ConvexSet& s1, const ConvexSet& s2) {
  if (s1.dim() != s2.dim()) fail(ErrorCode::kMalformedProgram, "sup_gauge dimensions");
  double g = 0.0;
  const Polyhedron& p = s2.poly;
  for (int r = 0; r < p.rows(); ++r) {
    Vector a = p.A.row(r).transpose();
    const double scale = 1.0 + a.cwiseAbs().maxCoeff();
    if (p.b(r) < -kTol * scale) fail(ErrorCode::kOriginNotContained, "origin violates a row");
    SupportResult s = support_function(s1, a);
    if (!s.bounded) return kInf;
    if (p.b(r) <= kTol * scale) {
      if (s.value > 1e-8 * scale) return kInf;
      continue;
    }
    g = std::max(g, s.value / p.b(r));
  }
  for (const BallConstraint& b : s2.balls) {
    const double m = max_block_norm(s1, b.offset, b.length);
    if (b.radius <= 0.0) {
      if (m > 1e-8) return kInf;
      continue;
    }
    g = std::max(g, m / b.radius);
  }
  return g;
}

double sup_gauge_over_projections(const ConvexSet& ubar, const std::vector<Block>& blocks,
                                  const ConvexSet& s2) {
  const int n = ubar.dim();
  double g = 0.0;
  const Polyhedron& p = s2.poly;
  for (int r = 0; r < p.rows(); ++r) {
    const double scale = 1.0 + p.A.row(r).cwiseAbs().maxCoeff();
    if (p.b(r) < -kTol * scale) fail(ErrorCode::kOriginNotContained, "origin violates a row");
    // The support of a product is the sum of the block supports.
    double total = 0.0;
    for (const Block& b : blocks) {
      Vector a = Vector::Zero(n);
      a.segment(b.offset, b.length) = p.A.row(r).segment(b.offset, b.length).transpose();
      if (a.isZero()) continue;
      SupportResult s = support_function(ubar, a);
      if (!s.bounded) return kInf;
      total += s.value;
    }
    if (p.b(r) <= kTol * scale) {
      if (total > 1e-8 * scale) return kInf;
      continue;
    }
    g = std::max(g, total / p.b(r));
  }
  for (const BallConstraint& ball : s2.balls) {
    double sq = 0.0;
    for (const Block& b : blocks) {
      const int lo = std::max(b.offset, ball.offset);
      const int hi = std::min(b.offset + b.length, ball.offset + ball.length);
      if (hi <= lo) continue;
      const double m = max_block_norm(ubar, lo, hi - lo);
      sq += m * m;
    }
    const double m = std::sqrt(sq);
    if (ball.radius <= 0.0) {
      if (m > 1e-8) return kInf;
      continue;
    }
    g = std::max(g, m / ball.radius);
  }
  return g;
}

void check_nesting(const UncertaintySpec& U, const UncertaintySpec& Ubar, double tol) {
  if (U.dim != Ubar.dim) fail(ErrorCode::kMalformedProgram, "nesting check dimensions");
  ConvexSet outer = flatten(U);
  ConvexSet inner = intersect(Ubar);
  for (int r = 0; r < outer.poly.rows(); ++r) {
    SupportResult s = support_function(inner, outer.poly.A.row(r).transpose());
    const double b = outer.poly.b(r);
    if (!s.bounded || s.value > b + tol * (1.0 + std::abs(b)))
      fail(ErrorCode::kNotNested, "Ubar exceeds row " + std::to_string(r) + " of U");
  }
  if (outer.balls.empty()) return;
  bool exact = true;
  for (const BallConstraint& b : outer.balls) {
    try {
      const double m = max_block_norm(inner, b.offset, b.length);
      if (m > b.radius * (1.0 + tol) + tol)
        fail(ErrorCode::kNotNested, "Ubar exceeds a ball of U");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnsupported) throw;
      exact = false;
    }
  }
  if (exact) return;
  SamplerOptions opt;
  opt.rescale_to_boundary = false;
  for (const Vector& u : hit_and_run(inner, kNestingSamples, 0x5eed, opt))
    if (!contains(outer, u, tol))
      fail(ErrorCode::kNotNested, "sampled point of Ubar lies outside U");
}

ShrinkageReport compute_rhs_factors(const UncertaintySpec& U, const UncertaintySpec& Ubar) {
  check_same_layout(U, Ubar);
  if (!is_block_width_one(U))
    fail(ErrorCode::kMalformedProgram, "right-hand-side sets need blocks of width 1");
  check_nesting(U, Ubar);
  const int m = U.dim;
  const Vector d = projection_bounds(U, true);
  const Vector dbar = projection_bounds(Ubar, true);
  ShrinkageReport rep;
  rep.coefficient = false;
  double lo = kInf, hi = 0.0;
  for (int i = 0; i < m; ++i) {
    rep.per_dim.push_back({d(i), dbar(i)});
    if (d(i) <= kTol) continue;  // zero-width axis carries no uncertainty
    const double ratio = dbar(i) / d(i);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  if (std::isinf(lo)) lo = hi = 1.0;
  rep.rho_ro = lo;
  rep.gamma_ro = hi;
  ConvexSet ubar = intersect(Ubar);
  // The gauge of a down-closed set is monotone, so its maximum over U is
  // attained at the top corner when U is a box, else at a vertex.
  if (U.coupling_atoms.empty()) {
    rep.rho_aro = d.isZero() ? 1.0 : max_scaling_into_down_hull(ubar, d);
  } else {
    ConvexSet u = intersect(U);
    if (!u.polyhedral()) fail(ErrorCode::kUnsupported, "coupled U with balls");
    double best = kInf;
    for (const Vector& v : enumerate_vertices(u.poly)) {
      if (v.lpNorm<Eigen::Infinity>() <= kTol) continue;
      best = std::min(best, max_scaling_into_down_hull(ubar, v.cwiseMax(0.0)));
    }
    rep.rho_aro = std::isinf(best) ? 1.0 : best;
  }
  rep.gamma_aro = rep.gamma_ro;
  rep.src_gamma_aro = FactorSource::kClosedForm;
  rep.rho_adapt = dbar.isZero() ? 1.0 : max_scaling_into_down_hull(ubar, dbar);
  return rep;
}

ShrinkageReport compute_coeff_factors(const UncertaintySpec& U, const UncertaintySpec& Ubar) {
  check_same_layout(U, Ubar);
  if (!U.coupling_atoms.empty())
    fail(ErrorCode::kMalformedProgram, "U must be constraint-wise");
  ConvexSet ubar = intersect(Ubar);
  if (!contains(ubar, Vector::Zero(Ubar.dim), 1e-9))
    fail(ErrorCode::kOriginNotContained, "translate Ubar so that it contains the origin");
  check_nesting(U, Ubar);
  ConvexSet u = flatten(U);
  ShrinkageReport rep;
  rep.coefficient = true;
  double lo = kInf, hi = 0.0;
  for (int i = 0; i < U.num_blocks(); ++i) {
    const Block& blk = U.blocks[i];
    ConvexSet ui = flatten_block(U, i);
    double r = kInf;
    if (ui.polyhedral()) {
      if (!is_bounded(ui.poly)) fail(ErrorCode::kUnsupported, "unbounded block set");
      for (const Vector& v : enumerate_vertices(ui.poly)) {
        if (v.lpNorm<Eigen::Infinity>() <= kTol) continue;
        r = std::min(r, max_scaling_into_projection(ubar, blk, v));
      }
    } else if (ui.poly.rows() == 0 && ui.balls.size() == 1 && ui.balls[0].length == blk.length) {
      // A ball scales into the projection up to the projection's inradius.
      for (const BallConstraint& b : ubar.balls)
        if (b.offset < blk.offset || b.offset + b.length > blk.offset + blk.length)
          fail(ErrorCode::kUnsupported, "ball block with coupled balls elsewhere");
      std::vector<int> keep;
      for (int k = 0; k < blk.length; ++k) keep.push_back(blk.offset + k);
      Polyhedron proj = project(ubar.poly, keep);
      double inradius = kInf;
      for (int row = 0; row < proj.rows(); ++row) {
        const double na = proj.A.row(row).norm();
        if (na <= kTol) continue;
        inradius = std::min(inradius, proj.b(row) / na);
      }
      for (const BallConstraint& b : ubar.balls) inradius = std::min(inradius, b.radius);
      r = inradius / ui.balls[0].radius;
    } else {
      fail(ErrorCode::kUnsupported, "block set mixing balls and halfspaces");
    }
    if (std::isinf(r)) r = 1.0;
    const double s = sup_gauge(ubar, block_atoms_set(U, i));
    rep.per_dim.push_back({r, s});
    lo = std::min(lo, r);
    hi = std::max(hi, s);
  }
  rep.rho_ro = lo;
  rep.gamma_ro = hi;
  rep.rho_aro = inv(sup_gauge(u, ubar));
  rep.gamma_aro = sup_gauge(ubar, u);
  rep.rho_adapt = inv(sup_gauge_over_projections(ubar, Ubar.blocks, ubar));
  return rep;
}

double closed_form_q_norm(double alpha, double beta, int m, double q) {
  if (!(alpha > 0.0) || m < 1 || !(q >= 1.0))
    fail(ErrorCode::kInvalidNormParameters, "need alpha > 0, m >= 1, q >= 1");
  const double root = std::isinf(q) ? 1.0 : std::pow(static_cast<double>(m), 1.0 / q);
  const double slack = 1e-12 * (1.0 + alpha * root);
  if (beta < alpha - slack || beta > alpha * root + slack)
    fail(ErrorCode::kInvalidNormParameters, "need alpha <= beta <= alpha m^(1/q)");
  return beta / (alpha * root);
}

UncertaintySpec translate_spec(const UncertaintySpec& spec, const Vector& shift) {
  spec.validate();
  if (shift.size() != spec.dim) fail(ErrorCode::kMalformedProgram, "shift size");
  auto move = [](const SetAtom& atom, const Vector& s) -> SetAtom {
    if (auto* h = std::get_if<Halfspaces>(&atom)) return Halfspaces{h->A, h->b - h->A * s};
    if (auto* b = std::get_if<Box>(&atom)) return Box{b->lower - s, b->upper - s};
    if (auto* r = std::get_if<BudgetRow>(&atom))
      return BudgetRow{r->weights, r->limit - r->weights.dot(s)};
    if (s.lpNorm<Eigen::Infinity>() > 0.0)
      fail(ErrorCode::kUnsupported, "origin-centred balls cannot be translated");
    return atom;
  };
  UncertaintySpec out = spec;
  for (int i = 0; i < spec.num_blocks(); ++i) {
    const Block& b = spec.blocks[i];
    for (SetAtom& a : out.cw_atoms[i]) a = move(a, shift.segment(b.offset, b.length));
  }
  for (SetAtom& a : out.coupling_atoms) a = move(a, shift);
  return out;
}

Translation translate_by_symmetry_point(const UncertaintySpec& U, const UncertaintySpec& Ubar) {
  ConvexSet ubar = intersect(Ubar);
  const int n = Ubar.dim;
  Translation t;
  Vector corner(n);
  bool corner_ok = true;
  for (int i = 0; i < n; ++i) {
    SupportResult s = support_function(ubar, unit(n, i, -1.0));
    if (!s.bounded) fail(ErrorCode::kUnbounded, "Ubar is not compact");
    corner(i) = -s.value;
  }
  corner_ok = contains(ubar, corner, 1e-9);
  if (corner_ok) {
    t.shift = corner;
    t.orthant_shift = true;
  } else if (contains(ubar, Vector::Zero(n), 0.0) && Ubar.has_balls()) {
    // Balls are origin-centred and cannot move; keep the sets as they are.
    t.shift = Vector::Zero(n);
  } else {
    if (!ubar.polyhedral()) fail(ErrorCode::kUnsupported, "symmetry point of a set with balls");
    t.shift = symmetry_point(ubar.poly).point;
  }
  if (t.shift.lpNorm<Eigen::Infinity>() <= 1e-13) t.shift.setZero();
  t.U = translate_spec(U, t.shift);
  t.Ubar = translate_spec(Ubar, t.shift);
  return t;
}

std::vector<std::string> report_invariant_violations(const ShrinkageReport& r, int m, int p,
                                                     bool nonnegative, double tol) {
  std::vector<std::string> out;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) out.push_back(what);
  };
  need(r.rho_ro >= -tol && r.rho_aro >= -tol && r.rho_adapt >= -tol, "negative factor");
  if (!r.coefficient) {
    need(r.rho_ro <= r.gamma_ro + tol, "rho_ro > gamma_ro");
    need(r.gamma_ro <= 1.0 + tol, "gamma_ro > 1");
    need(r.rho_aro <= r.gamma_aro + tol, "rho_aro > gamma_aro");
    need(r.gamma_aro <= 1.0 + tol, "gamma_aro > 1");
    need(std::abs(r.gamma_aro - r.gamma_ro) <= tol, "gamma_aro != gamma_ro");
    need(r.rho_aro <= r.rho_ro + tol, "rho_aro > rho_ro");
    need(r.gamma_ro <= 0.0 || r.rho_adapt >= r.rho_aro / r.gamma_ro - tol,
         "rho_adapt < rho_aro / gamma_ro");
    need(r.rho_adapt >= 1.0 / m - tol, "rho_adapt < 1/m");
  } else {
    need(r.rho_ro <= r.gamma_ro + tol, "rho_ro > gamma_ro");
    need(r.rho_aro <= r.gamma_aro + tol, "rho_aro > gamma_aro");
    need(r.rho_aro <= 0.0 || 1.0 / r.rho_adapt <= r.gamma_ro / r.rho_aro + tol,
         "1/rho_adapt > gamma_ro / rho_aro");
    if (nonnegative) need(1.0 / r.rho_adapt <= m * p + tol, "1/rho_adapt > mp");
  }
  return out;
}

}  // namespace coupledro
