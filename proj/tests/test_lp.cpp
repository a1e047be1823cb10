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

#include "coupledro/lp.hpp"
#include "lp_oracle.hpp"

using namespace coupledro;

namespace {

double box_min(const LinearProgram& lp, const Vector& g) {
  double v = 0.0;
  for (int j = 0; j < lp.num_vars(); ++j) {
    const double lo = lp.lower.size() ? lp.lower(j) : 0.0;
    const double hi = lp.upper.size() ? lp.upper(j) : kInf;
    if (g(j) > 1e-12) v += g(j) * lo;
    else if (g(j) < -1e-12) v += g(j) * hi;
  }
  return v;
}

}  // namespace

TEST_CASE("textbook maximization") {
  LpBuilder b;
  int x = b.add_variable(0, kInf, 3);
  int y = b.add_variable(0, kInf, 5);
  b.add_le({{x, 1}}, 4);
  b.add_le({{y, 2}}, 12);
  b.add_le({{x, 3}, {y, 2}}, 18);
  LpSolution s = solve_lp(b.build(Sense::kMaximize));
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(36.0));
  CHECK(s.primal(0) == doctest::Approx(2.0));
  CHECK(s.primal(1) == doctest::Approx(6.0));
  CHECK(s.ineq_dual(0) == doctest::Approx(0.0));
  CHECK(s.ineq_dual(1) == doctest::Approx(1.5));
  CHECK(s.ineq_dual(2) == doctest::Approx(1.0));
}

TEST_CASE("equality rows and free variables") {
  LpBuilder b;
  int x = b.add_variable(-kInf, kInf, 1);
  int y = b.add_variable(-kInf, kInf, 1);
  b.add_eq({{x, 1}, {y, -1}}, 1);
  b.add_ge({{x, 1}, {y, 1}}, -3);
  LpSolution s = solve_lp(b.build(Sense::kMinimize));
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(-3.0));
  CHECK(s.primal(0) - s.primal(1) == doctest::Approx(1.0));
}

TEST_CASE("cycling-prone degenerate program terminates") {
  // Beale's example cycles under plain Dantzig pricing.
  LpBuilder b;
  int x1 = b.add_variable(0, kInf, -0.75);
  int x2 = b.add_variable(0, kInf, 150);
  int x3 = b.add_variable(0, kInf, -0.02);
  int x4 = b.add_variable(0, kInf, 6);
  b.add_le({{x1, 0.25}, {x2, -60}, {x3, -0.04}, {x4, 9}}, 0);
  b.add_le({{x1, 0.5}, {x2, -90}, {x3, -0.02}, {x4, 3}}, 0);
  b.add_le({{x3, 1}}, 1);
  LpSolution s = solve_lp(b.build(Sense::kMinimize));
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(-0.05));
}

TEST_CASE("unbounded program returns an improving ray") {
  LpBuilder b;
  int x = b.add_variable(0, kInf, -1);
  int y = b.add_variable(0, kInf, 0);
  b.add_le({{x, 1}, {y, -1}}, 1);
  LinearProgram lp = b.build(Sense::kMinimize);
  LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::kUnbounded);
  CHECK(lp.cost.dot(s.ray) < 0);
  CHECK((lp.A_ineq * s.ray)(0) <= 1e-12);
  CHECK(s.ray.minCoeff() >= -1e-12);
}

TEST_CASE("infeasible program returns a Farkas certificate") {
  LpBuilder b;
  int x = b.add_variable(0, 2, 1);
  int y = b.add_variable(0, kInf, 1);
  b.add_ge({{x, 1}, {y, 1}}, 5);
  b.add_le({{y, 1}}, 1);
  LinearProgram lp = b.build(Sense::kMinimize);
  LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::kInfeasible);
  Vector g = lp.A_ineq.transpose() * s.farkas_ineq;
  CHECK(box_min(lp, g) - lp.b_ineq.dot(s.farkas_ineq) > 1e-9);
}

TEST_CASE("malformed programs are rejected") {
  LinearProgram lp;
  lp.cost = Vector::Ones(2);
  lp.A_ineq = Matrix::Ones(1, 3);
  lp.b_ineq = Vector::Ones(1);
  CHECK_THROWS_AS(solve_lp(lp), Error);
  lp.A_ineq = Matrix::Ones(1, 2);
  lp.b_ineq(0) = std::nan("");
  CHECK_THROWS_AS(solve_lp(lp), Error);
  try {
    solve_lp(lp);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformedProgram);
  }
}

TEST_CASE("random programs agree with basis enumeration") {
  std::mt19937_64 rng(20260101);
  int optimal = 0, infeasible = 0, unbounded = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LinearProgram lp = testing::random_small_lp(rng);
    testing::OracleResult ref = testing::brute_force_lp(lp);
    LpSolution s = solve_lp(lp);
    INFO("trial " << trial);
    REQUIRE(s.status == ref.status);
    if (s.status == LpStatus::kOptimal) {
      ++optimal;
      const double scale = 1.0 + std::abs(ref.objective);
      CHECK(std::abs(s.objective - ref.objective) <= 1e-7 * scale);
      CHECK(primal_infeasibility(lp, s.primal) <= 1e-8);
      if (s.ineq_dual.size()) CHECK(s.ineq_dual.minCoeff() >= 0.0);
      const double cmin = lp.sense == Sense::kMaximize ? -s.objective : s.objective;
      CHECK(std::abs(cmin - dual_objective(lp, s)) <= 1e-7 * scale);
    } else if (s.status == LpStatus::kUnbounded) {
      ++unbounded;
      const double dir = lp.sense == Sense::kMaximize ? 1.0 : -1.0;
      CHECK(dir * lp.cost.dot(s.ray) > 0.0);
      if (lp.A_ineq.rows()) CHECK((lp.A_ineq * s.ray).maxCoeff() <= 1e-9);
      if (lp.A_eq.rows()) CHECK((lp.A_eq * s.ray).cwiseAbs().maxCoeff() <= 1e-9);
    } else {
      ++infeasible;
      Vector g = Vector::Zero(lp.num_vars());
      double rhs = 0.0;
      if (lp.A_ineq.rows()) {
        g += lp.A_ineq.transpose() * s.farkas_ineq;
        rhs += lp.b_ineq.dot(s.farkas_ineq);
      }
      if (lp.A_eq.rows()) {
        g += lp.A_eq.transpose() * s.farkas_eq;
        rhs += lp.b_eq.dot(s.farkas_eq);
      }
      CHECK(box_min(lp, g) - rhs > 0.0);
    }
  }
  CHECK(optimal >= 100);
  CHECK(infeasible > 0);
  CHECK(unbounded > 0);
}

TEST_CASE("objective scales with the cost vector") {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    LinearProgram lp = testing::random_small_lp(rng);
    LpSolution s = solve_lp(lp);
    if (s.status != LpStatus::kOptimal) continue;
    for (double lambda : {0.5, 3.0, 17.25}) {
      LinearProgram scaled = lp;
      scaled.cost *= lambda;
      LpSolution t = solve_lp(scaled);
      REQUIRE(t.status == LpStatus::kOptimal);
      CHECK(t.objective == doctest::Approx(lambda * s.objective).epsilon(1e-9));
    }
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("solves are deterministic") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    LinearProgram lp = testing::random_small_lp(rng);
    LpSolution a = solve_lp(lp), b = solve_lp(lp);
    CHECK(a.status == b.status);
    if (a.status == LpStatus::kOptimal) CHECK(a.primal == b.primal);
  }
}
