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

// Command-line front end. Exit codes: 0 ok, 1 invalid input, 2 bound
// violation, 3 parse error, 4 solver failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coupledro/experiments.hpp"
#include "coupledro/json_io.hpp"

using namespace coupledro;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitBoundViolation = 2;
constexpr int kExitParse = 3;
constexpr int kExitSolver = 4;

struct Common {
  double tol = 1e-3;
  int max_iter = 1000;
  std::uint64_t seed = 1;
  int threads = 1;

  SolverOptions solver() const {
    SolverOptions o;
    o.tol = tol;
    o.max_iter = max_iter;
    o.seed = seed;
    return o;
  }
};

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kParseError: return kExitParse;
    case ErrorCode::kSolverFailure:
    case ErrorCode::kUnbounded:
    case ErrorCode::kInfeasible:
    case ErrorCode::kIterationLimit:
    case ErrorCode::kVertexCapExceeded:
    case ErrorCode::kProjectionBlowup:
      return kExitSolver;
    default: return kExitInvalid;
  }
}

// The coefficient factors use the blocks stored in the set; --blocks only
// checks that they have the expected width.
void check_blocks(const UncertaintySpec& s, int p) {
  for (const Block& b : s.blocks)
    if (b.length != p)
      fail(ErrorCode::kMalformedProgram, "set has a block of width " + std::to_string(b.length) +
                                             ", expected " + std::to_string(p));
}

int cmd_shrinkage(const std::string& path, bool coeff, int blocks) {
  const Json j = read_json_file(path);
  if (!j.is_object() || !j.contains("baseline") || !j.contains("coupled"))
    fail(ErrorCode::kParseError, path + ": expected fields 'baseline' and 'coupled'");
  const UncertaintySpec U = uncertainty_from_json(j.at("baseline"));
  const UncertaintySpec Ubar = uncertainty_from_json(j.at("coupled"));
  if (blocks > 0) {
    check_blocks(U, blocks);
    check_blocks(Ubar, blocks);
  }
  const ShrinkageReport r = coeff ? compute_coeff_factors(U, Ubar) : compute_rhs_factors(U, Ubar);
  std::cout << report_to_json(r).dump(2) << "\n";
  return kExitOk;
}

int cmd_solve(const std::string& path, const std::string& method, const Common& common) {
  const RobustProblem p = problem_from_json(read_json_file(path));
  const SolveResult r = solve(p, parse_method(method), common.solver());
  std::cout << result_to_json(r).dump(2) << "\n";
  return kExitOk;
}

void print_value(const char* name, double v) {
  if (std::isnan(v)) return;
  std::printf("%-6s %.10g\n", name, v);
}

int cmd_verify(const std::string& path, const Common& common) {
  const RobustProblem p = problem_from_json(read_json_file(path));
  const BoundReport rep = verify_problem_bounds(p, common.solver());
  const ShrinkageReport& f = rep.factors;
  std::printf("factors rho_ro=%.10g gamma_ro=%.10g rho_aro=%.10g gamma_aro=%.10g rho_adapt=%.10g\n",
              f.rho_ro, f.gamma_ro, f.rho_aro, f.gamma_aro, f.rho_adapt);
  print_value("z_ro", rep.z.z_ro);
  print_value("z_cp", rep.z.z_cp);
  print_value("z_aro", rep.z.z_aro);
  print_value("z_acp", rep.z.z_acp);
  if (!rep.adaptive_status.empty()) std::printf("adaptive status %s\n", rep.adaptive_status.c_str());
  for (const BoundCheck& c : rep.verdict.checks) {
    if (!c.applicable) {
      std::printf("%-10s %-12s n/a %s\n", c.name.c_str(), c.ratio.c_str(), c.note.c_str());
      continue;
    }
    std::printf("%-10s %-12s %.10g in [%.10g, %.10g] %s\n", c.name.c_str(), c.ratio.c_str(),
                c.value, c.lower, c.upper, c.pass ? "pass" : "FAIL");
  }
  return rep.verdict.all_pass() ? kExitOk : kExitBoundViolation;
}

int cmd_sample(const std::string& path, int count, bool boundary, const Common& common) {
  const UncertaintySpec s = uncertainty_from_json(read_json_file(path));
  SamplerOptions so;
  so.rescale_to_boundary = boundary;
  for (const Vector& u : hit_and_run(intersect(s), count, common.seed, so)) {
    for (int i = 0; i < u.size(); ++i) std::printf(i ? " %.17g" : "%.17g", u(i));
    std::printf("\n");
  }
  return kExitOk;
}

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_method(item));
  return out;
}

int cmd_experiment(ExperimentConfig cfg, const std::string& family, const std::string& methods,
                   const std::string& out, const std::string& plot, const Common& common) {
  cfg.family = parse_family(family);
  cfg.methods = parse_methods(methods);
  cfg.solver = common.solver();
  cfg.seed = common.seed;
  cfg.threads = common.threads;
  if (cfg.sizes.empty()) fail(ErrorCode::kMalformedProgram, "--size is required");
  for (int k : cfg.sizes)
    if (k < 2) fail(ErrorCode::kMalformedProgram, "sizes must be at least 2");
  if (cfg.seeds < 1) fail(ErrorCode::kMalformedProgram, "--seeds must be at least 1");
  if (!cfg.sweep.empty() && cfg.sweep != "alpha" && cfg.sweep != "gamma")
    fail(ErrorCode::kParseError, "--sweep must be alpha or gamma");
  const std::vector<ResultRow> rows = run_experiment(cfg);
  const std::string csv = rows_to_csv(rows);
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out);
    if (!f) fail(ErrorCode::kParseError, "cannot write " + out);
    f << csv;
  }
  if (!plot.empty()) {
    const std::string axis = cfg.sweep.empty() ? "size" : "param";
    for (Method m : cfg.methods) {
      std::ofstream f(plot + "_" + method_name(m) + ".tsv");
      if (!f) fail(ErrorCode::kParseError, "cannot write plot data under " + plot);
      f << plot_tsv(plot_data(rows, method_name(m), axis));
    }
  }
  int failures = 0, errors = 0;
  for (const ResultRow& r : rows) {
    failures += r.verdict == "fail";
    errors += r.verdict == "error";
  }
  if (failures > 0 || errors > 0)
    std::fprintf(stderr, "%d bound failures, %d errors in %zu rows\n", failures, errors, rows.size());
  if (failures > 0) return kExitBoundViolation;
  return errors > 0 ? kExitSolver : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust optimisation under coupled uncertainty sets"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--tol", common.tol, "Solver tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", common.max_iter, "Iteration limit")->check(CLI::PositiveNumber);
  app.add_option("--seed", common.seed, "Random seed");
  app.add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string sets_path, problem_path, set_path, method, family, out, plot;
  std::string methods = "rc";
  bool coeff = false, boundary = false;
  int blocks = 0, count = 100;
  ExperimentConfig cfg;

  auto* shrink = app.add_subcommand("shrinkage", "Shrinkage factors of a nested pair of sets");
  shrink->add_option("--sets", sets_path, "JSON with 'baseline' and 'coupled' sets")->required();
  shrink->add_flag("--coeff", coeff, "Coefficient uncertainty");
  shrink->add_option("--blocks", blocks, "Block width p");

  auto* solve_cmd = app.add_subcommand("solve", "Solve a robust problem");
  solve_cmd->add_option("--problem", problem_path, "Problem JSON")->required();
  solve_cmd->add_option("--method", method, "projection|rc|cutting-plane|ldr|benders|scenarios|vertex")
      ->required();

  auto* exp = app.add_subcommand("experiment", "Run a generated experiment");
  exp->add_option("family", family, "supply_chain|portfolio|lot_sizing")->required();
  exp->add_option("--size", cfg.sizes, "Sizes (repeatable)")->required();
  exp->add_option("--seeds", cfg.seeds, "Instances per size");
  exp->add_option("--methods", methods, "Comma-separated methods");
  exp->add_option("--sweep", cfg.sweep, "alpha or gamma");
  exp->add_option("--params", cfg.params, "Swept values");
  exp->add_option("--out", out, "CSV output path (default stdout)");
  exp->add_option("--plot", plot, "Prefix for TSV plot data");

  auto* verify = app.add_subcommand("verify-bounds", "Check the factor bounds on a problem");
  verify->add_option("--problem", problem_path, "Problem JSON")->required();

  auto* sample = app.add_subcommand("sample", "Hit-and-run samples of a set");
  sample->add_option("--set", set_path, "Set JSON")->required();
  sample->add_option("--count", count, "Number of points")->check(CLI::NonNegativeNumber);
  sample->add_flag("--boundary", boundary, "Rescale points onto the boundary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*shrink) return cmd_shrinkage(sets_path, coeff, blocks);
    if (*solve_cmd) return cmd_solve(problem_path, method, common);
    if (*exp) return cmd_experiment(cfg, family, methods, out, plot, common);
    if (*verify) return cmd_verify(problem_path, common);
    if (*sample) return cmd_sample(set_path, count, boundary, common);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  }
  return kExitOk;
}
