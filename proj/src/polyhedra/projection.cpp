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
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "coupledro/polyhedra.hpp"

namespace coupledro {

namespace {

struct Row {
  Eigen::RowVectorXd a;
  double b;
};

// Scales each row to unit infinity norm, drops trivial rows and keeps the
// tightest copy of duplicated rows.
std::vector<Row> normalize(std::vector<Row> rows, double tol) {
  std::vector<Row> out;
  for (Row& r : rows) {
    const double s = r.a.cwiseAbs().maxCoeff();
    if (s <= tol) {
      if (r.b < -tol) fail(ErrorCode::kEmptyCoupledSet, "projection produced 0 <= negative");
      continue;
    }
    r.a /= s;
    r.b /= s;
    for (int j = 0; j < r.a.size(); ++j)
      if (std::abs(r.a(j)) <= 1e-13) r.a(j) = 0.0;
    out.push_back(r);
  }
  std::vector<int> order(out.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Row> dedup;
  for (size_t i = 0; i < out.size(); ++i) {
    bool merged = false;
    for (Row& d : dedup) {
      if ((d.a - out[i].a).cwiseAbs().maxCoeff() <= 1e-11) {
        d.b = std::min(d.b, out[i].b);
        merged = true;
        break;
      }
    }
    if (!merged) dedup.push_back(out[i]);
  }
  return dedup;
}

Polyhedron to_poly(const std::vector<Row>& rows, int n) {
  Polyhedron p;
  p.A = Matrix(rows.size(), n);
  p.b = Vector(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    p.A.row(i) = rows[i].a;
    p.b(i) = rows[i].b;
  }
  return p;
}

std::vector<Row> to_rows(const Polyhedron& p) {
  std::vector<Row> rows;
  for (int r = 0; r < p.rows(); ++r) rows.push_back({p.A.row(r), p.b(r)});
  return rows;
}

}  // namespace

Polyhedron remove_redundant_rows(const Polyhedron& p, double tol) {
  std::vector<Row> rows = normalize(to_rows(p), tol);
  // A row is redundant if maximizing its left side over the remaining rows
  // cannot exceed its right side.
  std::vector<bool> keep(rows.size(), true);
  const int n = p.dim();
  for (size_t i = 0; i < rows.size(); ++i) {
    LinearProgram lp;
    lp.sense = Sense::kMaximize;
    lp.cost = rows[i].a.transpose();
    int cnt = 0;
    for (size_t k = 0; k < rows.size(); ++k)
      if (k != i && keep[k]) ++cnt;
    lp.A_ineq = Matrix(cnt, n);
    lp.b_ineq = Vector(cnt);
    int r = 0;
    for (size_t k = 0; k < rows.size(); ++k) {
      if (k == i || !keep[k]) continue;
      lp.A_ineq.row(r) = rows[k].a;
      lp.b_ineq(r++) = rows[k].b;
    }
    // Relax row i slightly so that an empty remainder is still detected as
    // a bounded program.
    lp.A_ineq.conservativeResize(cnt + 1, n);
    lp.b_ineq.conservativeResize(cnt + 1);
    lp.A_ineq.row(cnt) = rows[i].a;
    lp.b_ineq(cnt) = rows[i].b + 1.0;
    lp.lower = Vector::Constant(n, -kInf);
    lp.upper = Vector::Constant(n, kInf);
    LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::kInfeasible)
      fail(ErrorCode::kEmptyCoupledSet, "empty polyhedron during projection");
    if (sol.status == LpStatus::kOptimal && sol.objective <= rows[i].b + tol * (1.0 + std::abs(rows[i].b)))
      keep[i] = false;
  }
  std::vector<Row> kept;
  for (size_t i = 0; i < rows.size(); ++i)
    if (keep[i]) kept.push_back(rows[i]);
  return to_poly(kept, n);
}

Polyhedron project(const Polyhedron& p, const std::vector<int>& keep,
                   const ProjectionOptions& options) {
  const int n = p.dim();
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) fail(ErrorCode::kMalformedProgram, "projection index out of range");
    kept[k] = true;
  }
  std::vector<Row> rows = normalize(to_rows(p), options.tol);
  std::vector<int> remaining;
  for (int j = 0; j < n; ++j)
    if (!kept[j]) remaining.push_back(j);
  while (!remaining.empty()) {
    // Eliminate the variable producing the fewest combinations.
    size_t best = 0;
    long best_cost = -1;
    for (size_t idx = 0; idx < remaining.size(); ++idx) {
      const int j = remaining[idx];
      long pos = 0, neg = 0;
      for (const Row& r : rows) {
        if (r.a(j) > options.tol) ++pos;
        else if (r.a(j) < -options.tol) ++neg;
      }
      const long cost = pos * neg - pos - neg;
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        best = idx;
      }
    }
    const int j = remaining[best];
    remaining.erase(remaining.begin() + best);
    std::vector<Row> pos, neg, next;
    for (Row& r : rows) {
      if (r.a(j) > options.tol) pos.push_back(r);
      else if (r.a(j) < -options.tol) neg.push_back(r);
      else {
        r.a(j) = 0.0;
        next.push_back(r);
      }
    }
    const size_t total = next.size() + pos.size() * neg.size();
    if (total > static_cast<size_t>(options.max_rows))
      fail(ErrorCode::kProjectionBlowup,
           "elimination would create " + std::to_string(total) + " rows");
    for (const Row& rp : pos) {
      for (const Row& rn : neg) {
        const double cp = rp.a(j), cn = -rn.a(j);
        Row r{rp.a * cn + rn.a * cp, rp.b * cn + rn.b * cp};
        r.a(j) = 0.0;
        next.push_back(r);
      }
    }
    rows = normalize(next, options.tol);
    if (options.prune && !rows.empty()) rows = to_rows(remove_redundant_rows(to_poly(rows, n), options.tol));
  }
  Polyhedron out;
  out.A = Matrix(rows.size(), keep.size());
  out.b = Vector(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t k = 0; k < keep.size(); ++k) out.A(r, k) = rows[r].a(keep[k]);
    out.b(r) = rows[r].b;
  }
  return out;
}

Polyhedron down_hull(const Polyhedron& p, const ProjectionOptions& options) {
  const int n = p.dim();
  ConvexSet set = make_polyhedral(p);
  for (int i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e(i) = -1.0;
    SupportResult s = support_function(set, e);
    if (!s.bounded || -s.value < -1e-9)
      fail(ErrorCode::kNotDownClosedInput, "set leaves the nonnegative orthant");
  }
  // Lifted system over (t, s): 0 <= t <= s, A s <= b; project out s.
  Polyhedron lifted;
  lifted.A = Matrix::Zero(2 * n + p.rows(), 2 * n);
  lifted.b = Vector::Zero(2 * n + p.rows());
  for (int i = 0; i < n; ++i) {
    lifted.A(i, i) = 1.0;
    lifted.A(i, n + i) = -1.0;
    lifted.A(n + i, i) = -1.0;
  }
  for (int r = 0; r < p.rows(); ++r) {
    lifted.A.block(2 * n + r, n, 1, n) = p.A.row(r);
    lifted.b(2 * n + r) = p.b(r);
  }
  std::vector<int> keep(n);
  std::iota(keep.begin(), keep.end(), 0);
  return project(lifted, keep, options);
}

ConvexSet down_hull(const UncertaintySpec& spec, const ProjectionOptions& options) {
  bool monotone = true;
  for (const auto& list : spec.cw_atoms)
    for (const SetAtom& a : list) monotone = monotone && is_monotone(a);
  for (const SetAtom& a : spec.coupling_atoms) monotone = monotone && is_monotone(a);
  ConvexSet set = flatten(spec);
  if (monotone) return set;
  if (!set.polyhedral())
    fail(ErrorCode::kUnsupported, "down-hull of a non-monotone set with ball atoms");
  return make_polyhedral(down_hull(set.poly, options));
}

}  // namespace coupledro
