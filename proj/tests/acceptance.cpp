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

// Acceptance suite. Each criterion prints one PASS or FAIL line followed by
// the failing sub-checks; the exit status is nonzero if any criterion fails.
//
// Closeness is relative with a unit floor: |a - b| <= tol * max(1, |a|, |b|).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coupledro/experiments.hpp"
#include "instances.hpp"
#include "lp_oracle.hpp"

using namespace coupledro;
using coupledro::testing::draw;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Collects failed sub-checks of one criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failures_.push_back(what);
  }
  void expect_close(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(10);
    s << what << ": got " << got << ", expected " << want << " (tol " << tol << ")";
    expect(close(got, want, tol), s.str());
  }
  int total() const { return total_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  int total_ = 0;
  std::vector<std::string> failures_;
};

struct Criterion {
  int id;
  std::string title;
  std::function<void(Checker&)> run;
};

SolverOptions exact_options() {
  SolverOptions o;
  o.audit_samples = 0;
  o.tol = 1e-9;
  o.max_iter = 5000;
  return o;
}

double static_z(const RobustProblem& p) { return solve_rc(p.as_static(), exact_options()).objective; }
double adaptive_z(const RobustProblem& p) {
  return solve_full_adaptive_vertex(p, exact_options()).objective;
}

// 1. Two-store example values and runtime.
void intro_values(Checker& ck) {
  constexpr double kTol = 1e-6;
  constexpr double kSeconds = 1.0;
  const auto t0 = Clock::now();
  const UncertaintySpec a = intro_scenario_a(1.5);
  const UncertaintySpec b = intro_scenario_b(0.5, 0.75);
  const RobustProblem sa = supply_chain_intro(a, false);
  const RobustProblem sb = supply_chain_intro(b, false);
  ck.expect_close(static_z(sa.as_baseline()), 600.0, kTol, "static constraint-wise");
  ck.expect_close(static_z(sa), 600.0, kTol, "static coupled, scenario a");
  ck.expect_close(static_z(sb), 450.0, kTol, "static coupled, scenario b");
  const RobustProblem aa = supply_chain_intro(a, true);
  const RobustProblem ab = supply_chain_intro(b, true);
  ck.expect_close(adaptive_z(aa.as_baseline()), 600.0, kTol, "adaptive constraint-wise");
  ck.expect_close(adaptive_z(aa), 450.0, kTol, "adaptive coupled, scenario a");
  ck.expect_close(adaptive_z(ab), 450.0, kTol, "adaptive coupled, scenario b");
  const double s = seconds_since(t0);
  ck.expect(s < kSeconds, "runtime " + std::to_string(s) + " s, limit 1 s");
}

// 2. Instances that attain the bounds.
void tightness(Checker& ck) {
  constexpr double kTol = 1e-6;
  const UncertaintySpec b = intro_scenario_b(0.5, 0.75);
  const UncertaintySpec a = intro_scenario_a(1.5);
  struct Pair {
    std::string name;
    RobustProblem p;
    double z_base, z_coupled;
  };
  const std::vector<Pair> statics = {
      {"static upper bound instance", supply_chain_intro(b, false, 0, 0, 0, 1, 1), 1.0, 1.0},
      {"static lower bound instance", supply_chain_intro(b, false, 1, 0, 1, 0, 0), 2.0, 1.0},
  };
  for (const Pair& s : statics) {
    ck.expect_close(static_z(s.p.as_baseline()), s.z_base, kTol, s.name + " z_ro");
    ck.expect_close(static_z(s.p), s.z_coupled, kTol, s.name + " z_cp");
  }
  const std::vector<Pair> adaptives = {
      {"adaptive lower bound instance", supply_chain_intro(a, true, 1, 1, 1, 1, 1), 4.0, 3.0},
      {"adaptive upper bound instance", supply_chain_intro(a, true, 1, 1, 1, 100, 1), 4.0, 4.0},
  };
  for (const Pair& s : adaptives) {
    ck.expect_close(adaptive_z(s.p.as_baseline()), s.z_base, kTol, s.name + " z_aro");
    ck.expect_close(adaptive_z(s.p), s.z_coupled, kTol, s.name + " z_acp");
  }

  // Coefficient uncertainty: l1 and Euclidean blocks, with and without u_1 = u_2.
  SolverOptions o = exact_options();
  Vector c(4);
  c << 0, 0, 1, 1;
  const RobustProblem p = lower(coupledro::testing::l1_l2_problem(c, true));
  ck.expect_close(solve_cutting_plane(p.as_baseline(), o).objective, std::sqrt(2.0), kTol,
                  "l1/l2 c=(0,0,1,1) z_ro");
  ck.expect_close(solve_cutting_plane(p, o).objective, 2.0, kTol, "l1/l2 c=(0,0,1,1) z_cp");
  c << 1, 1, 0, 0;
  const RobustProblem q = lower(coupledro::testing::l1_l2_problem(c, true));
  ck.expect_close(solve_cutting_plane(q.as_baseline(), o).objective, 2.0, kTol,
                  "l1/l2 c=(1,1,0,0) z_ro");
  ck.expect_close(solve_cutting_plane(q, o).objective, 2.0, kTol, "l1/l2 c=(1,1,0,0) z_cp");

  // Closed forms are exact.
  const std::vector<ClosedFormCheck> cf = verify_closed_form_instances();
  ck.expect(cf.size() == 5, "closed-form instance count");
  if (cf.size() < 3) return;
  auto exact = [&](const ClosedFormCheck& k, double den, double num, const std::string& label) {
    std::ostringstream s;
    s << label << " (" << k.name << ", " << k.ratio << "): got (" << k.denominator << ", "
      << k.numerator << "), expected (" << den << ", " << num << ")";
    ck.expect(k.denominator == den && k.numerator == num && k.attains, s.str());
  };
  exact(cf[0], 2.0, 4.0, "reciprocal recourse, both costs");
  exact(cf[1], 1.0, 1.0, "reciprocal recourse, one cost");
  exact(cf[2], 2.0, 8.0, "reciprocal first stage, both costs");
}

UncertaintySpec box_spec(int m, double hi) {
  UncertaintySpec s = make_block_spec(m, 1);
  for (int i = 0; i < m; ++i) s.cw_atoms[i].push_back(Box{Vector::Zero(1), Vector::Constant(1, hi)});
  return s;
}

// 3. Shrinkage factors.
void factors(Checker& ck) {
  constexpr double kTol = 1e-7;
  auto expect_report = [&](const ShrinkageReport& r, double a, double b, double c, double d,
                           const std::string& name) {
    ck.expect_close(r.rho_ro, a, kTol, name + " rho_ro");
    ck.expect_close(r.gamma_ro, b, kTol, name + " gamma_ro");
    ck.expect_close(r.rho_aro, c, kTol, name + " rho_aro");
    ck.expect_close(r.gamma_aro, d, kTol, name + " gamma_aro");
  };
  expect_report(compute_rhs_factors(intro_box(), intro_scenario_a(1.5)), 1.0, 1.0, 0.75, 1.0,
                "scenario a");
  expect_report(compute_rhs_factors(intro_box(), intro_scenario_b(0.5, 0.75)), 0.5, 1.0, 0.5, 1.0,
                "scenario b");

  std::mt19937_64 rng(20260418);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + trial % 5;
    const double alpha = 0.5 + 2.0 * u(rng);
    const double beta = alpha * (1.0 + (m - 1.0) * u(rng));
    UncertaintySpec U = box_spec(m, alpha);
    UncertaintySpec Ubar = U;
    Ubar.coupling_atoms.push_back(BudgetRow{Vector::Ones(m), beta});
    const ShrinkageReport r = compute_rhs_factors(U, Ubar);
    ck.expect_close(r.rho_adapt, closed_form_q_norm(alpha, beta, m, 1.0), kTol,
                    "q-norm trial " + std::to_string(trial));
  }
}

// 4. Projection, dual counterpart and cutting planes on static instances.
void oracle_equivalence(Checker& ck) {
  constexpr double kTol = 1e-6;
  SolverOptions o = exact_options();
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + t % 5;
    const RobustProblem p = lower(coupledro::testing::random_rhs(m, 2, 3, false, 10000 + t));
    const double proj = solve_projection(p, o).objective;
    const double rc = solve_rc(p, o).objective;
    const double cp = solve_cutting_plane(p, o).objective;
    const std::string id = "instance " + std::to_string(t);
    ck.expect_close(rc, proj, kTol, id + " rc vs projection");
    ck.expect_close(cp, proj, kTol, id + " cutting plane vs projection");
  }
}

// 5. Ordering of the adjustable methods on lot sizing.
void adaptive_sandwich(Checker& ck) {
  constexpr double kSlack = 1e-6;
  constexpr double kBendersTol = 1e-3;
  SolverOptions o = exact_options();
  o.scenario_count = 30;
  int exact_inner = 0;
  for (int t = 0; t < 32; ++t) {
    const int m = 2 + t % 4;
    const RobustProblem p = lower(gen_lot_sizing(m, 500 + t));
    const double sc = solve_finite_scenarios(p, o).objective;
    const double be = solve_benders(p, o).objective;
    const double ve = solve_full_adaptive_vertex(p, o).objective;
    const double ld = solve_ldr(p, o).objective;
    const std::string id = "m=" + std::to_string(m) + " seed " + std::to_string(500 + t);
    auto le = [&](double a, double b, const std::string& what) {
      std::ostringstream s;
      s.precision(10);
      s << id << " " << what << ": " << a << " > " << b;
      ck.expect(a <= b + kSlack * std::max({1.0, std::abs(a), std::abs(b)}), s.str());
    };
    le(sc, be, "scenarios <= benders");
    le(be, ve, "benders <= vertex");
    le(ve, ld, "vertex <= ldr");
    if (p.uncertainty.dim <= o.exact_inner_dim) {
      ++exact_inner;
      ck.expect_close(be, ve, kBendersTol, id + " benders = vertex");
    }
  }
  ck.expect(exact_inner >= 30, "fewer than 30 instances with the exact inner problem");
}

struct Sweeps {
  std::vector<ResultRow> supply_alpha;
  std::vector<ResultRow> supply_default;
  std::vector<ResultRow> lot;
  std::vector<ResultRow> portfolio;
};

ExperimentConfig sweep_config(ExperimentFamily family, std::vector<int> sizes, int seeds,
                              std::vector<Method> methods) {
  ExperimentConfig c;
  c.family = family;
  c.sizes = std::move(sizes);
  c.seeds = seeds;
  c.methods = std::move(methods);
  c.solver = exact_options();
  c.solver.tol = 1e-7;
  return c;
}

const Sweeps& sweeps() {
  static const Sweeps s = [] {
    Sweeps out;
    ExperimentConfig a = sweep_config(ExperimentFamily::kSupplyChain, {4, 6, 8, 10}, 20, {Method::kRc});
    a.sweep = "alpha";
    a.params = {0.0, 0.25, 0.5, 0.75, 1.0};
    out.supply_alpha = run_experiment(a);
    out.supply_default = run_experiment(
        sweep_config(ExperimentFamily::kSupplyChain, {4, 6}, 5, {Method::kCuttingPlane}));
    out.lot = run_experiment(sweep_config(ExperimentFamily::kLotSizing, {2, 3, 4, 5, 6}, 4,
                                          {Method::kBenders, Method::kVertex}));
    ExperimentConfig p = sweep_config(ExperimentFamily::kPortfolio, {5}, 2, {Method::kCuttingPlane});
    p.params = {0.0, 1.0};
    out.portfolio = run_experiment(p);
    return out;
  }();
  return s;
}

std::string row_id(const ResultRow& r) {
  std::ostringstream s;
  s << r.family << " size " << r.size << " seed " << r.seed << " param " << r.param << " "
    << r.method;
  return s.str();
}

// 6. Every applicable verdict of the sweeps passes.
void sweep_verdicts(Checker& ck) {
  constexpr double kTol = 1e-6;
  const Sweeps& s = sweeps();
  int applicable = 0, not_applicable = 0;
  for (const auto* rows : {&s.supply_alpha, &s.supply_default, &s.lot, &s.portfolio}) {
    for (const ResultRow& r : *rows) {
      ck.expect(r.verdict != "error", row_id(r) + " failed: " + r.note);
      ck.expect(r.verdict != "fail", row_id(r) + " violates its bound: " + r.note);
      applicable += r.verdict == "pass";
      not_applicable += r.verdict == "n/a";
    }
  }
  for (const ResultRow& r : s.lot) {
    if (r.verdict != "pass") continue;
    const double lo = 1.0 / std::sqrt(static_cast<double>(r.size));
    std::ostringstream m;
    m << row_id(r) << " ratio " << r.ratio << " outside [" << lo << ", 1]";
    ck.expect(r.ratio >= lo - kTol && r.ratio <= 1.0 + kTol, m.str());
  }
  ck.expect(applicable > 0, "no applicable verdicts");
  std::printf("  sweeps: %d rows checked, %d without an applicable bound\n", applicable,
              not_applicable);
}

// Random RHS instance over [0,1]^m cut by mixed-sign rows, so the coupled
// set is not down-closed.
RhsRobustProblem random_non_monotone(int m, std::uint64_t seed, bool adaptive) {
  RhsRobustProblem p = coupledro::testing::random_rhs(m, 2, 2, adaptive, seed);
  CounterRng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  UncertaintySpec s = box_spec(m, 1.0);
  Vector centre(m);
  for (int i = 0; i < m; ++i) centre(i) = draw(rng, 0.3, 0.7);
  const int k = 1 + static_cast<int>(rng.next() % 3);
  Halfspaces h{Matrix(k, m), Vector(k)};
  for (int r = 0; r < k; ++r) {
    for (int j = 0; j < m; ++j) h.A(r, j) = draw(rng, -1.0, 1.0);
    h.b(r) = h.A.row(r).dot(centre) + draw(rng, 0.05, 0.3);
  }
  s.coupling_atoms.push_back(h);
  p.uncertainty = s;
  return p;
}

// 7. The coupled set and its down-hull give the same values.
void down_hull_equivalence(Checker& ck) {
  constexpr double kTol = 1e-7;
  for (int t = 0; t < 50; ++t) {
    const int m = 2 + t % 3;
    const RhsRobustProblem p = random_non_monotone(m, 3000 + t, true);
    RhsRobustProblem q = p;
    const ConvexSet hull = down_hull(p.uncertainty);
    UncertaintySpec s = make_block_spec(m, 1);
    s.coupling_atoms.push_back(Halfspaces{hull.poly.A, hull.poly.b});
    q.uncertainty = s;
    const RobustProblem lp = lower(p), lq = lower(q);
    const std::string id = "instance " + std::to_string(t);
    ck.expect_close(static_z(lq), static_z(lp), kTol, id + " static");
    ck.expect_close(adaptive_z(lq), adaptive_z(lp), kTol, id + " adaptive");
  }
}

// 8. Without coupling, full adaptivity gains nothing over the static value.
void constraint_wise_static(Checker& ck) {
  constexpr double kTol = 1e-7;
  std::vector<std::pair<std::string, RobustProblem>> probs;
  for (int t = 0; t < 30; ++t)
    probs.push_back({"random " + std::to_string(t),
                     lower(coupledro::testing::random_rhs(2 + t % 5, 2, 3, true, 6000 + t))});
  for (int t = 0; t < 10; ++t)
    probs.push_back({"non-monotone " + std::to_string(t), lower(random_non_monotone(2 + t % 3, 7000 + t, true))});
  for (int m = 2; m <= 5; ++m)
    probs.push_back({"lot sizing m=" + std::to_string(m), lower(gen_lot_sizing(m, 40 + m))});
  probs.push_back({"two-store", supply_chain_intro(intro_scenario_a(1.5), true)});
  for (const auto& [name, p] : probs) {
    const RobustProblem b = p.as_baseline();
    ck.expect_close(adaptive_z(b), static_z(b), kTol, name);
  }
}

// 9. LP core against basis enumeration.
void lp_core(Checker& ck) {
  constexpr double kTol = 1e-7;
  std::mt19937_64 rng(20260419);
  for (int trial = 0; trial < 200; ++trial) {
    const LinearProgram lp = coupledro::testing::random_small_lp(rng);
    const coupledro::testing::OracleResult ref = coupledro::testing::brute_force_lp(lp);
    const LpSolution s = solve_lp(lp);
    const std::string id = "lp " + std::to_string(trial);
    ck.expect(s.status == ref.status, id + " status " + lp_status_name(s.status) + " vs oracle " +
                                          lp_status_name(ref.status));
    if (s.status != LpStatus::kOptimal || ref.status != LpStatus::kOptimal) continue;
    ck.expect_close(s.objective, ref.objective, kTol, id + " objective");
    const double cmin = lp.sense == Sense::kMaximize ? -s.objective : s.objective;
    ck.expect_close(dual_objective(lp, s), cmin, kTol, id + " duality gap");
  }
}

double least_squares_slope(const std::vector<std::pair<double, double>>& pts) {
  double mx = 0, my = 0;
  for (auto [x, y] : pts) mx += x, my += y;
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) sxy += (x - mx) * (y - my), sxx += (x - mx) * (x - mx);
  return sxy / sxx;
}

// 10. Desk-scale trends.
void trends(Checker& ck) {
  constexpr double kTol = 1e-9;
  const Sweeps& s = sweeps();
  const std::vector<int> sizes = {4, 6, 8, 10};
  // Mean ratio decreases weakly in alpha and stays above 1 - alpha.
  std::map<double, std::vector<std::pair<double, double>>> std_by_alpha;
  for (int size : sizes) {
    std::vector<ResultRow> sub;
    for (const ResultRow& r : s.supply_alpha)
      if (r.size == size) sub.push_back(r);
    const std::vector<PlotPoint> pts = plot_data(sub, "rc", "param");
    ck.expect(pts.size() == 5, "alpha sweep points at size " + std::to_string(size));
    for (size_t i = 0; i < pts.size(); ++i) {
      std::ostringstream m;
      m << "size " << size << " alpha " << pts[i].x << " mean " << pts[i].mean;
      if (i > 0) ck.expect(pts[i].mean <= pts[i - 1].mean + kTol, m.str() + " increases");
      ck.expect(pts[i].mean >= 1.0 - pts[i].x - 1e-6, m.str() + " below 1 - alpha");
      std_by_alpha[pts[i].x].push_back({static_cast<double>(size), pts[i].std});
    }
  }
  // The spread over seeds shrinks with size: nonpositive least-squares slope
  // and no larger at the largest size than at the smallest.
  for (const auto& [alpha, pts] : std_by_alpha) {
    if (alpha == 0.0) continue;
    std::ostringstream m;
    m << "alpha " << alpha << " std by size:";
    for (auto [x, y] : pts) m << " " << y;
    ck.expect(least_squares_slope(pts) <= kTol, m.str() + " (slope positive)");
    ck.expect(pts.back().second <= pts.front().second + kTol, m.str() + " (grows)");
  }
  // Lot sizing: coupling leaves the static value unchanged.
  for (int m = 2; m <= 6; ++m) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const RobustProblem p = lower(gen_lot_sizing(m, seed));
      ck.expect_close(static_z(p), static_z(p.as_baseline()), 1e-7,
                      "lot sizing m=" + std::to_string(m) + " seed " + std::to_string(seed) +
                          " static values differ");
    }
  }
  // Portfolio: each added coupling raises the mean worst-case return.
  double mean0 = 0, mean1 = 0;
  int n0 = 0, n1 = 0;
  for (const ResultRow& r : s.portfolio) {
    ck.expect(r.ratio >= 1.0 - 1e-6, row_id(r) + " coupled return below constraint-wise");
    if (r.param == 0.0) mean0 += r.objective, ++n0;
    else mean1 += r.objective, ++n1;
  }
  ck.expect(n0 > 0 && n1 > 0, "portfolio rows missing");
  if (n0 > 0 && n1 > 0) ck.expect(mean1 / n1 >= mean0 / n0 - 1e-6, "sector coupling lowers the mean return");
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const std::vector<Criterion> criteria = {
      {1, "two-store example values", intro_values},
      {2, "bound-attaining instances", tightness},
      {3, "shrinkage factors", factors},
      {4, "static method agreement", oracle_equivalence},
      {5, "adjustable method ordering", adaptive_sandwich},
      {6, "experiment bound verdicts", sweep_verdicts},
      {7, "down-hull equivalence", down_hull_equivalence},
      {8, "constraint-wise full adaptivity", constraint_wise_static},
      {9, "LP core oracle", lp_core},
      {10, "desk-scale trends", trends},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Checker ck;
    const auto t = Clock::now();
    try {
      c.run(ck);
    } catch (const std::exception& e) {
      ck.expect(false, std::string("exception: ") + e.what());
    }
    const bool ok = ck.failures().empty();
    failed += !ok;
    std::printf("%s criterion %2d: %s (%d checks, %zu failed, %.1f s)\n", ok ? "PASS" : "FAIL", c.id,
                c.title.c_str(), ck.total(), ck.failures().size(), seconds_since(t));
    for (const std::string& f : ck.failures()) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  constexpr double kTotalSeconds = 15 * 60;
  const double total = seconds_since(t0);
  const bool in_time = total < kTotalSeconds;
  failed += !in_time;
  std::printf("%s runtime: %.1f s (limit %.0f s)\n", in_time ? "PASS" : "FAIL", total, kTotalSeconds);
  std::printf("%d of %zu checks failed\n", failed, criteria.size() + 1);
  return failed == 0 ? 0 : 1;
}
