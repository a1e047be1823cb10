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
#include <map>
#include <string>

#include "coupledro/experiments.hpp"
#include "coupledro/json_io.hpp"

using namespace coupledro;

namespace {

SolverOptions quiet() {
  SolverOptions o;
  o.audit_samples = 0;
  return o;
}

ExperimentConfig config(ExperimentFamily family, std::vector<int> sizes, int seeds,
                        std::vector<Method> methods) {
  ExperimentConfig c;
  c.family = family;
  c.sizes = std::move(sizes);
  c.seeds = seeds;
  c.methods = std::move(methods);
  c.solver = quiet();
  return c;
}

std::string dump(const RhsRobustProblem& p) { return problem_to_json(p).dump(); }

}  // namespace

TEST_CASE("generators are deterministic per seed") {
  CHECK(dump(gen_supply_chain(4, 7)) == dump(gen_supply_chain(4, 7)));
  CHECK(dump(gen_supply_chain(4, 7)) != dump(gen_supply_chain(4, 8)));
  CHECK(dump(gen_lot_sizing(3, 7)) == dump(gen_lot_sizing(3, 7)));
  const PortfolioInstance a = gen_portfolio(5, 3), b = gen_portfolio(5, 3);
  CHECK(uncertainty_to_json(a.further).dump() == uncertainty_to_json(b.further).dump());
  CHECK(a.problem.rows.size() == 10);
  CHECK(a.problem.rows[3].terms.size() == b.problem.rows[3].terms.size());
  CHECK(a.problem.rows[3].terms[2].coef == b.problem.rows[3].terms[2].coef);
  CHECK(instance_seed(1, 4, 0) != instance_seed(1, 4, 1));
  CHECK(instance_seed(1, 4, 0) != instance_seed(1, 5, 0));
}

TEST_CASE("generator shapes") {
  const RobustProblem sc = lower(gen_supply_chain(5, 1));
  CHECK(sc.n1 == 25);
  CHECK(sc.n2 == 25);
  int covered = 0;
  for (const auto& g : supply_chain_groups(7)) {
    CHECK(g.size() >= 2);
    CHECK(g.size() <= 3);
    covered += static_cast<int>(g.size());
  }
  CHECK(covered == 7);
  const RobustProblem lot = lower(gen_lot_sizing(3, 1));
  CHECK(lot.n1 == 3);
  CHECK(lot.n2 == 9);
  CHECK(lot.adaptive);
  CHECK(!is_empty(intersect(gen_portfolio(6, 2).further)));
}

TEST_CASE("vacuous supply-chain coupling gives unit factors") {
  SupplyChainParams sp;
  sp.alpha = 0.0;
  sp.gamma = 10.0;
  const RobustProblem p = lower(gen_supply_chain(4, 3, sp));
  const ShrinkageReport f = compute_rhs_factors(p.baseline, p.uncertainty);
  CHECK(f.rho_ro == doctest::Approx(1.0));
  CHECK(f.gamma_ro == doctest::Approx(1.0));
}

TEST_CASE("lot-sizing adaptivity factor matches the budget closed form") {
  for (int m = 2; m <= 4; ++m) {
    const RobustProblem p = lower(gen_lot_sizing(m, 5));
    const ShrinkageReport f = compute_rhs_factors(p.baseline, p.uncertainty);
    const double root = std::sqrt(static_cast<double>(m));
    CHECK(f.rho_adapt == doctest::Approx(1.0 / root).epsilon(1e-7));
    CHECK(f.rho_adapt ==
          doctest::Approx(closed_form_q_norm(20.0, 20.0 * root, m, 1.0)).epsilon(1e-7));
  }
}

TEST_CASE("supply-chain alpha sweep stays in its band and decreases") {
  ExperimentConfig c = config(ExperimentFamily::kSupplyChain, {4, 6}, 20, {Method::kRc});
  c.sweep = "alpha";
  c.params = {0.0, 0.25, 0.5, 0.75, 1.0};
  const std::vector<ResultRow> rows = run_experiment(c);
  REQUIRE(rows.size() == 2 * 5 * 20);
  for (const ResultRow& r : rows) {
    CHECK(r.verdict == "pass");
    CHECK(r.ratio >= 1.0 - r.param - 1e-6);
    CHECK(r.ratio <= 1.0 + 1e-6);
  }
  for (int size : {4, 6}) {
    std::vector<ResultRow> sub;
    for (const ResultRow& r : rows)
      if (r.size == size) sub.push_back(r);
    const std::vector<PlotPoint> pts = plot_data(sub, "rc", "param");
    REQUIRE(pts.size() == 5);
    for (size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].mean <= pts[i - 1].mean + 1e-9);
    for (const PlotPoint& p : pts) CHECK(p.mean >= 1.0 - p.x - 1e-6);
  }
}

TEST_CASE("supply-chain spread shrinks with size") {
  // Weak trend over seeds: the spread of the ratio at the largest size is
  // no larger than at the smallest.
  ExperimentConfig c = config(ExperimentFamily::kSupplyChain, {4, 10}, 20, {Method::kRc});
  c.sweep = "alpha";
  c.params = {0.5};
  const std::vector<PlotPoint> pts = plot_data(run_experiment(c), "rc", "size");
  REQUIRE(pts.size() == 2);
  CHECK(pts[1].std <= pts[0].std + 1e-9);
}

TEST_CASE("supply-chain default draws with the Euclidean coupling") {
  ExperimentConfig c = config(ExperimentFamily::kSupplyChain, {4}, 4,
                              {Method::kRc, Method::kCuttingPlane});
  c.solver.tol = 1e-7;
  const std::vector<ResultRow> rows = run_experiment(c);
  REQUIRE(rows.size() == 8);
  for (const ResultRow& r : rows) {
    if (r.method == "rc") {
      // The dual counterpart refuses the ball; the row records the error.
      CHECK(r.verdict == "error");
      CHECK(r.note.find("NonPolyhedralAtomInRC") != std::string::npos);
    } else {
      CHECK(r.verdict == "pass");
      CHECK(r.ratio <= 1.0 + 1e-6);
    }
  }
}

TEST_CASE("lot-sizing ratios lie in their band and methods are ordered") {
  ExperimentConfig c = config(ExperimentFamily::kLotSizing, {2, 3, 4}, 3,
                              {Method::kScenarios, Method::kBenders, Method::kVertex, Method::kLdr});
  c.solver.tol = 1e-7;
  c.solver.scenario_count = 30;
  const std::vector<ResultRow> rows = run_experiment(c);
  REQUIRE(rows.size() == 3 * 3 * 4);
  std::map<std::uint64_t, std::map<std::string, double>> by_seed;
  for (const ResultRow& r : rows) {
    CHECK(r.verdict == "pass");
    by_seed[r.seed][r.method] = r.objective;
    // Static values agree since every projection is unchanged.
    CHECK(r.z_cp == doctest::Approx(r.baseline).epsilon(1e-7));
  }
  for (const auto& [seed, v] : by_seed) {
    CHECK(v.at("scenarios") <= v.at("vertex") + 1e-6);
    CHECK(v.at("benders") == doctest::Approx(v.at("vertex")).epsilon(1e-6));
    CHECK(v.at("vertex") <= v.at("ldr") + 1e-6);
  }
}

TEST_CASE("lot sizing without coupling: all values coincide") {
  RobustProblem p = lower(gen_lot_sizing(3, 11));
  p = p.as_baseline();
  const SolverOptions o = quiet();
  const double z = solve_rc(p.as_static(), o).objective;
  CHECK(solve_full_adaptive_vertex(p, o).objective == doctest::Approx(z).epsilon(1e-7));
}

TEST_CASE("portfolio: coupling raises the worst-case return") {
  SolverOptions o = quiet();
  o.tol = 1e-7;
  for (std::uint64_t seed : {1, 2}) {
    const PortfolioInstance inst = gen_portfolio(5, seed);
    const double z_ro = solve_rc(inst.problem.as_baseline(), o).objective;
    const double z_cp = solve_cutting_plane(inst.problem, o).objective;
    const double z_further = solve_cutting_plane(inst.problem.with_uncertainty(inst.further), o).objective;
    CHECK(z_cp >= z_ro - 1e-6);
    CHECK(z_further >= z_cp - 1e-6);
    // Removing the coupling reproduces the constraint-wise value.
    CHECK(solve_cutting_plane(inst.problem.as_baseline(), o).objective ==
          doctest::Approx(z_ro).epsilon(1e-6));
  }
}

TEST_CASE("portfolio experiment rows") {
  ExperimentConfig c = config(ExperimentFamily::kPortfolio, {5}, 2, {Method::kCuttingPlane});
  c.params = {0.0, 1.0};
  const std::vector<ResultRow> rows = run_experiment(c);
  REQUIRE(rows.size() == 4);
  for (const ResultRow& r : rows) {
    CHECK(r.status == "optimal");
    CHECK(r.ratio >= 1.0 - 1e-3);
  }
}

TEST_CASE("empty method list gives no rows") {
  const ExperimentConfig c = config(ExperimentFamily::kLotSizing, {3}, 2, {});
  CHECK(run_experiment(c).empty());
  CHECK(rows_from_csv(rows_to_csv({})).empty());
}

TEST_CASE("thread count does not change the rows") {
  ExperimentConfig c = config(ExperimentFamily::kSupplyChain, {4, 5}, 3, {Method::kRc});
  c.sweep = "alpha";
  c.params = {0.3};
  std::vector<ResultRow> a = run_experiment(c);
  c.threads = 3;
  std::vector<ResultRow> b = run_experiment(c);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    a[i].seconds = b[i].seconds = 0.0;
    CHECK(a[i] == b[i]);
  }
}

TEST_CASE("CSV round trip") {
  ExperimentConfig c = config(ExperimentFamily::kLotSizing, {2}, 2, {Method::kVertex, Method::kLdr});
  std::vector<ResultRow> rows = run_experiment(c);
  ResultRow odd;
  odd.family = "portfolio";
  odd.size = 7;
  odd.seed = 18446744073709551615ull;
  odd.objective = kInf;
  odd.ratio = -kInf;
  odd.lower = 1.0 / 3.0;
  odd.verdict = "error";
  odd.note = "";
  rows.push_back(odd);
  const std::vector<ResultRow> back = rows_from_csv(rows_to_csv(rows));
  REQUIRE(back.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) CHECK(back[i] == rows[i]);
  try {
    rows_from_csv("family,size\nx,1\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParseError);
  }
}

TEST_CASE("plot data statistics") {
  std::vector<ResultRow> rows(4);
  const double ratios[] = {0.5, 0.7, 1.0, 1.0};
  for (int i = 0; i < 4; ++i) {
    rows[i].method = "rc";
    rows[i].size = i < 2 ? 2 : 3;
    rows[i].ratio = ratios[i];
    rows[i].lower = 0.25;
    rows[i].upper = 1.0;
  }
  rows.push_back(rows[0]);
  rows.back().method = "ldr";
  const std::vector<PlotPoint> pts = plot_data(rows, "rc", "size");
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].x == 2.0);
  CHECK(pts[0].mean == doctest::Approx(0.6));
  CHECK(pts[0].std == doctest::Approx(0.1));
  CHECK(pts[0].count == 2);
  CHECK(pts[1].std == doctest::Approx(0.0));
  CHECK(pts[1].lb == doctest::Approx(0.25));
  const std::string tsv = plot_tsv(pts);
  CHECK(tsv.rfind("x\tmean\tstd\tlb\tub\n", 0) == 0);
}

TEST_CASE("bound verification on the shipped two-store fixtures") {
  const std::string dir = COUPLEDRO_FIXTURES;
  SolverOptions o = quiet();
  o.tol = 1e-7;
  const BoundReport s = verify_problem_bounds(
      problem_from_json(read_json_file(dir + "/supply_chain_intro.json")), o);
  CHECK(s.z.z_ro == doctest::Approx(600.0));
  CHECK(s.z.z_cp == doctest::Approx(450.0));
  REQUIRE(!s.verdict.checks.empty());
  const BoundCheck& st = s.verdict.checks.front();
  CHECK(st.value == doctest::Approx(0.75));
  CHECK(st.lower == doctest::Approx(0.5));
  CHECK(st.upper == doctest::Approx(1.0));
  CHECK(s.verdict.all_pass());

  const BoundReport a = verify_problem_bounds(
      problem_from_json(read_json_file(dir + "/supply_chain_intro_adaptive.json")), o);
  CHECK(a.z.z_aro == doctest::Approx(600.0));
  CHECK(a.z.z_acp == doctest::Approx(450.0));
  CHECK(a.verdict.all_pass());

  const BoundReport e = verify_problem_bounds(
      problem_from_json(read_json_file(dir + "/supply_chain_equal_sets.json")), o);
  CHECK(e.verdict.checks.front().value == doctest::Approx(1.0));
  CHECK(e.verdict.all_pass());

  try {
    verify_problem_bounds(problem_from_json(read_json_file(dir + "/supply_chain_not_nested.json")), o);
    FAIL("expected NotNested");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kNotNested);
  }
}

TEST_CASE("experiment configuration errors") {
  CHECK(parse_family("lot-sizing") == ExperimentFamily::kLotSizing);
  CHECK(std::string(family_name(ExperimentFamily::kPortfolio)) == "portfolio");
  try {
    parse_family("weather");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParseError);
  }
  ExperimentConfig c = config(ExperimentFamily::kLotSizing, {1}, 2, {Method::kRc});
  try {
    run_experiment(c);
    FAIL("expected MalformedProgram");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformedProgram);
  }
}
