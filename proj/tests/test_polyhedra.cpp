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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "coupledro/json_io.hpp"
#include "coupledro/polyhedra.hpp"

using namespace coupledro;

namespace {

Polyhedron box_poly(const Vector& lo, const Vector& hi) {
  const int n = static_cast<int>(lo.size());
  Polyhedron p;
  p.A = Matrix::Zero(2 * n, n);
  p.b = Vector(2 * n);
  for (int i = 0; i < n; ++i) {
    p.A(2 * i, i) = 1.0;
    p.b(2 * i) = hi(i);
    p.A(2 * i + 1, i) = -1.0;
    p.b(2 * i + 1) = -lo(i);
  }
  return p;
}

// Random bounded polytope: a box plus a few random cuts through it.
Polyhedron random_polytope(std::mt19937_64& rng, int n, int cuts, bool nonneg) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector lo = Vector::Constant(n, nonneg ? 0.0 : -1.0);
  Vector hi = Vector::Constant(n, 2.0);
  Polyhedron p = box_poly(lo, hi);
  const int r0 = p.rows();
  p.A.conservativeResize(r0 + cuts, n);
  p.b.conservativeResize(r0 + cuts);
  for (int k = 0; k < cuts; ++k) {
    for (int j = 0; j < n; ++j) p.A(r0 + k, j) = u(rng);
    p.b(r0 + k) = 1.0 + std::abs(u(rng));
  }
  return p;
}

double max_over(const VertexList& v, const Vector& y) {
  double best = -kInf;
  for (const Vector& x : v) best = std::max(best, y.dot(x));
  return best;
}

// Membership in the down-hull: exists s in P with s >= t (LP).
bool in_down_hull_oracle(const Polyhedron& p, const Vector& t) {
  const int n = p.dim();
  LpBuilder b;
  const int s = b.add_variables(n, -kInf, kInf);
  for (int r = 0; r < p.rows(); ++r) {
    LpBuilder::Terms terms;
    for (int j = 0; j < n; ++j) terms.push_back({s + j, p.A(r, j)});
    b.add_le(terms, p.b(r));
  }
  for (int j = 0; j < n; ++j) b.add_ge({{s + j, 1.0}}, t(j));
  return solve_lp(b.build(Sense::kMinimize)).status == LpStatus::kOptimal;
}

}  // namespace

TEST_CASE("flatten embeds block atoms and coupling atoms") {
  UncertaintySpec s = make_block_spec(2, 1);
  s.cw_atoms[0].push_back(Box{Vector::Zero(1), Vector::Ones(1)});
  s.cw_atoms[1].push_back(Box{Vector::Zero(1), Vector::Ones(1)});
  s.coupling_atoms.push_back(BudgetRow{Vector::Ones(2), 1.5});
  ConvexSet set = flatten(s);
  CHECK(set.poly.rows() == 5);
  CHECK(contains(set, Vector::Constant(2, 0.75)));
  CHECK_FALSE(contains(set, Vector::Constant(2, 0.8)));
  CHECK(flatten_block(s, 1).dim() == 1);
}

TEST_CASE("malformed specs are rejected") {
  UncertaintySpec s = make_block_spec(2, 2);
  s.cw_atoms[0].push_back(Box{Vector::Zero(3), Vector::Ones(3)});
  CHECK_THROWS_AS(s.validate(), Error);
  UncertaintySpec t = make_block_spec(1, 2);
  t.coupling_atoms.push_back(BudgetRow{Vector::Constant(2, -1.0), 1.0});
  CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("support function agrees with the best vertex") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 3;
    Polyhedron p = random_polytope(rng, n, 3, false);
    VertexList v = enumerate_vertices(p);
    for (int k = 0; k < 5; ++k) {
      Vector y(n);
      for (int i = 0; i < n; ++i) y(i) = g(rng);
      SupportResult s = support_function(make_polyhedral(p), y);
      CHECK(s.value == doctest::Approx(max_over(v, y)).epsilon(1e-9));
    }
  }
}

TEST_CASE("support of a ball alone is radius times the norm") {
  ConvexSet set;
  set.poly.A = Matrix(0, 3);
  set.poly.b = Vector(0);
  set.balls.push_back({0, 3, 2.5});
  Vector y(3);
  y << 1.0, -2.0, 2.0;
  CHECK(support_function(set, y).value == doctest::Approx(7.5));
}

TEST_CASE("box-ball bisection matches the general cutting-plane path") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    Vector lo = Vector::Constant(n, 0.0), hi = Vector::Constant(n, 1.0);
    if (trial % 3 == 0) lo = Vector::Constant(n, -1.0);
    ConvexSet fast = make_polyhedral(box_poly(lo, hi));
    const double radius = 0.5 + 0.4 * std::abs(u(rng)) * std::sqrt(n);
    fast.balls.push_back({0, n, radius});
    // A redundant oblique row forces the generic path.
    ConvexSet slow = fast;
    slow.poly.A.conservativeResize(slow.poly.rows() + 1, n);
    slow.poly.b.conservativeResize(slow.poly.rows());
    slow.poly.A.row(slow.poly.rows() - 1).setConstant(1.0);
    slow.poly.b(slow.poly.rows() - 1) = 100.0;
    Vector y(n);
    for (int i = 0; i < n; ++i) y(i) = u(rng);
    SupportResult a = support_function(fast, y), b = support_function(slow, y);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-8));
    CHECK(contains(fast, a.argmax, 1e-9));
  }
}

TEST_CASE("empty coupled set is detected") {
  UncertaintySpec s = make_block_spec(2, 1);
  s.cw_atoms[0].push_back(Box{Vector::Zero(1), Vector::Ones(1)});
  s.cw_atoms[1].push_back(Box{Vector::Zero(1), Vector::Ones(1)});
  Halfspaces h{Matrix::Constant(1, 2, -1.0), Vector::Constant(1, -3.0)};
  s.coupling_atoms.push_back(h);
  try {
    intersect(s);
    FAIL("expected EmptyCoupledSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyCoupledSet);
  }
  s.coupling_atoms[0] = L2Ball{0.5};
  CHECK_NOTHROW(intersect(s));
  s.coupling_atoms.push_back(Halfspaces{Matrix::Constant(1, 2, -1.0), Vector::Constant(1, -0.8)});
  CHECK_THROWS_AS(intersect(s), Error);
}

TEST_CASE("Fourier-Motzkin projection preserves support functions") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + trial % 3;
    Polyhedron p = random_polytope(rng, n, 4, false);
    std::vector<int> keep = {0, 2};
    Polyhedron q = project(p, keep);
    for (int k = 0; k < 6; ++k) {
      Vector y2(2);
      y2 << g(rng), g(rng);
      Vector y = Vector::Zero(n);
      y(0) = y2(0);
      y(2) = y2(1);
      const double a = support_function(make_polyhedral(p), y).value;
      const double b = support_function(make_polyhedral(q), y2).value;
      CHECK(a == doctest::Approx(b).epsilon(1e-8));
    }
  }
}

TEST_CASE("projection of a cube is a square with four rows") {
  Polyhedron cube = box_poly(Vector::Zero(3), Vector::Ones(3));
  Polyhedron sq = project(cube, {1, 2});
  CHECK(sq.rows() == 4);
  CHECK(enumerate_vertices(sq).size() == 4);
}

TEST_CASE("projection row cap raises ProjectionBlowup") {
  const int half = 150;
  Polyhedron p;
  p.A = Matrix::Zero(2 * half, 3);
  p.b = Vector::Ones(2 * half);
  for (int k = 0; k < half; ++k) {
    p.A(k, 0) = 1.0;
    p.A(k, 1) = std::cos(0.01 * k);
    p.A(k, 2) = std::sin(0.01 * k);
    p.A(half + k, 0) = -1.0;
    p.A(half + k, 1) = std::sin(0.02 * k);
    p.A(half + k, 2) = std::cos(0.03 * k);
  }
  ProjectionOptions opt;
  opt.prune = false;
  try {
    project(p, {1, 2}, opt);
    FAIL("expected ProjectionBlowup");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kProjectionBlowup);
  }
}

TEST_CASE("down-hull membership matches the lifted LP") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 2.2);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + trial % 3;
    Polyhedron p = random_polytope(rng, n, 3, true);
    // Push the set away from the origin so the hull differs from p.
    p.A.conservativeResize(p.rows() + 1, n);
    p.b.conservativeResize(p.rows());
    p.A.row(p.rows() - 1).setConstant(-1.0);
    p.b(p.rows() - 1) = -0.5;
    Polyhedron h = down_hull(p);
    ConvexSet hs = make_polyhedral(h);
    for (int k = 0; k < 40; ++k) {
      Vector t(n);
      for (int i = 0; i < n; ++i) t(i) = u(rng);
      CHECK(contains(hs, t, 1e-9) == in_down_hull_oracle(p, t));
    }
    CHECK(contains(hs, Vector::Zero(n)));
  }
}

TEST_CASE("down-hull rejects sets leaving the orthant and keeps monotone sets") {
  Polyhedron p = box_poly(Vector::Constant(2, -1.0), Vector::Ones(2));
  try {
    down_hull(p);
    FAIL("expected NotDownClosedInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotDownClosedInput);
  }
  UncertaintySpec s = make_block_spec(2, 1);
  for (int i = 0; i < 2; ++i) s.cw_atoms[i].push_back(Box{Vector::Zero(1), Vector::Ones(1)});
  s.coupling_atoms.push_back(L2Ball{1.2});
  ConvexSet d = down_hull(s);
  CHECK(d.balls.size() == 1);
  CHECK(d.poly.rows() == 4);
}

TEST_CASE("vertex enumeration: known polytopes and two algorithms agree") {
  CHECK(enumerate_vertices(box_poly(Vector::Zero(3), Vector::Ones(3))).size() == 8);
  Polyhedron simplex;
  simplex.A = Matrix(4, 3);
  simplex.A << -1, 0, 0, 0, -1, 0, 0, 0, -1, 1, 1, 1;
  simplex.b = Vector(4);
  simplex.b << 0, 0, 0, 1;
  CHECK(enumerate_vertices(simplex).size() == 4);
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    Polyhedron p = random_polytope(rng, n, 5, false);
    VertexList a = enumerate_vertices_by_subsets(p);
    VertexList b = enumerate_vertices_by_double_description(p);
    REQUIRE(a.size() == b.size());
    for (const Vector& v : a) {
      double best = kInf;
      for (const Vector& w : b) best = std::min(best, (v - w).norm());
      CHECK(best < 1e-7);
    }
  }
  for (int trial = 0; trial < 3; ++trial) {
    Polyhedron p = random_polytope(rng, 6, 14, false);
    CHECK(enumerate_vertices_by_subsets(p).size() ==
          enumerate_vertices_by_double_description(p).size());
  }
  Polyhedron big = box_poly(Vector::Zero(13), Vector::Ones(13));
  CHECK_THROWS_AS(enumerate_vertices(big), Error);
}

TEST_CASE("gauge and maximal scaling") {
  ConvexSet box = make_polyhedral(box_poly(Vector::Constant(3, -1.0), Vector::Ones(3)));
  Vector w(3);
  w << 0.5, -2.0, 1.0;
  CHECK(gauge(box, w) == doctest::Approx(2.0));
  CHECK(max_scaling(box, w) == doctest::Approx(0.5));
  ConvexSet ball;
  ball.poly.A = Matrix(0, 3);
  ball.poly.b = Vector(0);
  ball.balls.push_back({0, 3, 3.0});
  CHECK(gauge(ball, w) == doctest::Approx(w.norm() / 3.0));
  ConvexSet corner = make_polyhedral(box_poly(Vector::Zero(2), Vector::Ones(2)));
  Vector out(2);
  out << -1.0, 0.5;
  CHECK(gauge(corner, out) == kInf);
  ConvexSet shifted = make_polyhedral(box_poly(Vector::Ones(2), Vector::Constant(2, 2.0)));
  try {
    gauge(shifted, out);
    FAIL("expected OriginNotContained");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOriginNotContained);
  }
}

TEST_CASE("lifted scalings agree with gauges of explicit sets") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    Polyhedron p = random_polytope(rng, n, 3, true);
    p.A.conservativeResize(p.rows() + 1, n);
    p.b.conservativeResize(p.rows());
    p.A.row(p.rows() - 1).setConstant(-1.0);
    p.b(p.rows() - 1) = -0.3;
    ConvexSet hull = make_polyhedral(down_hull(p));
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = u(rng);
    CHECK(max_scaling_into_down_hull(make_polyhedral(p), v) ==
          doctest::Approx(max_scaling(hull, v)).epsilon(1e-8));
  }
  Polyhedron sq = box_poly(Vector::Constant(2, -1.0), Vector::Ones(2));
  Vector v(1);
  v << 0.25;
  CHECK(max_scaling_into_projection(make_polyhedral(sq), Block{1, 1}, v) == doctest::Approx(4.0));
}

TEST_CASE("symmetry points of simple polytopes") {
  Polyhedron tri;
  tri.A = Matrix(3, 2);
  tri.A << -1, 0, 0, -1, 1, 1;
  tri.b = Vector(3);
  tri.b << 0, 0, 1;
  SymmetryResult s = symmetry_point(tri);
  CHECK(s.value == doctest::Approx(0.5));
  CHECK(s.point(0) == doctest::Approx(1.0 / 3.0));
  CHECK(s.point(1) == doctest::Approx(1.0 / 3.0));
  SymmetryResult b = symmetry_point(box_poly(Vector::Zero(3), Vector::Constant(3, 2.0)));
  CHECK(b.value == doctest::Approx(1.0));
  CHECK((b.point - Vector::Ones(3)).norm() == doctest::Approx(0.0));
}

TEST_CASE("symmetry value dominates a grid search") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 8; ++trial) {
    Polyhedron p = random_polytope(rng, 2, 3, false);
    VertexList verts = enumerate_vertices(p);
    auto sym_at = [&](const Vector& x) {
      double best = kInf;
      for (int r = 0; r < p.rows(); ++r) {
        double m = kInf;
        for (const Vector& v : verts) m = std::min(m, p.A.row(r).dot(v));
        const double ax = p.A.row(r).dot(x);
        if (ax - m > 1e-12) best = std::min(best, (p.b(r) - ax) / (ax - m));
      }
      return best;
    };
    double grid_best = 0.0;
    for (int i = 0; i <= 120; ++i)
      for (int j = 0; j <= 120; ++j) {
        Vector x(2);
        x << -1.0 + 3.0 * i / 120.0, -1.0 + 3.0 * j / 120.0;
        if (!contains(make_polyhedral(p), x)) continue;
        grid_best = std::max(grid_best, sym_at(x));
      }
    SymmetryResult s = symmetry_point(p);
    CHECK(s.value >= grid_best - 1e-9);
    CHECK(s.value <= grid_best + 0.05);
    CHECK(sym_at(s.point) == doctest::Approx(s.value).epsilon(1e-7));
  }
}

TEST_CASE("hit-and-run stays inside, is reproducible and reaches the boundary") {
  UncertaintySpec s = make_block_spec(3, 1);
  for (int i = 0; i < 3; ++i) s.cw_atoms[i].push_back(Box{Vector::Zero(1), Vector::Ones(1)});
  s.coupling_atoms.push_back(L2Ball{1.2});
  ConvexSet set = intersect(s);
  std::vector<Vector> a = hit_and_run(set, 200, 42);
  std::vector<Vector> b = hit_and_run(set, 200, 42);
  std::vector<Vector> c = hit_and_run(set, 200, 43);
  REQUIRE(a.size() == 200);
  for (size_t k = 0; k < a.size(); ++k) {
    CHECK(contains(set, a[k], 1e-9));
    CHECK(a[k] == b[k]);
  }
  CHECK(a[0] != c[0]);
  SamplerOptions opt;
  opt.rescale_to_boundary = true;
  for (const Vector& x : hit_and_run(set, 50, 7, opt)) {
    CHECK(gauge(set, x) == doctest::Approx(1.0));
    CHECK(contains(set, x, 1e-9));
  }
}

TEST_CASE("hit-and-run mean on the unit square") {
  ConvexSet sq = make_polyhedral(box_poly(Vector::Zero(2), Vector::Ones(2)));
  std::vector<Vector> pts = hit_and_run(sq, 4000, 1);
  Vector mean = Vector::Zero(2);
  for (const Vector& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  CHECK(mean(0) == doctest::Approx(0.5).epsilon(0.05));
  CHECK(mean(1) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("hit-and-run in a flat set follows its affine hull") {
  UncertaintySpec s = make_block_spec(2, 1);
  for (int i = 0; i < 2; ++i) s.cw_atoms[i].push_back(Box{Vector::Zero(1), Vector::Ones(1)});
  Matrix e(2, 2);
  e << 1, -1, -1, 1;
  s.coupling_atoms.push_back(Halfspaces{e, Vector::Zero(2)});
  ConvexSet set = intersect(s);
  for (const Vector& x : hit_and_run(set, 30, 9)) {
    CHECK(x(0) == doctest::Approx(x(1)));
    CHECK(contains(set, x, 1e-9));
  }
}

TEST_CASE("counter-based generator is reproducible") {
  CounterRng a(123), b(123);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
  CHECK(mix_seed(5, 0) == mix_seed(5, 0));
}

TEST_CASE("uncertainty JSON round trip") {
  UncertaintySpec s = make_block_spec(2, 2);
  s.cw_atoms[0].push_back(Box{Vector::Zero(2), Vector::Constant(2, kInf)});
  s.cw_atoms[1].push_back(Halfspaces{Matrix::Identity(2, 2), Vector::Ones(2)});
  s.coupling_atoms.push_back(BudgetRow{Vector::Ones(4), 3.0});
  s.coupling_atoms.push_back(L2Ball{2.0});
  UncertaintySpec t = uncertainty_from_json(Json::parse(uncertainty_to_json(s).dump()));
  CHECK(t.dim == 4);
  CHECK(t.coupling_atoms.size() == 2);
  CHECK(std::get<Box>(t.cw_atoms[0][0]).upper(1) == kInf);
  CHECK_THROWS_AS(uncertainty_from_json(Json::parse(R"({"dim": 2})")), Error);
}
