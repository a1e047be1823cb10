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

// Instance generators for the supply-chain, portfolio and lot-sizing
// studies, and a runner that solves them, compares coupled against
// constraint-wise objectives and checks the shrinkage bounds.

#ifndef COUPLEDRO_EXPERIMENTS_HPP_
#define COUPLEDRO_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "coupledro/robust_model.hpp"
#include "coupledro/shrinkage.hpp"
#include "coupledro/solvers.hpp"

namespace coupledro {

// Coupling of the supply chain: u_l^1 >= u_l^j + alpha within each group of
// two or three stores, and ||u||_2 <= gamma. NaN draws alpha ~ U(0.1, 0.2)
// per group and gamma ~ U(sqrt(M)/2, 3 sqrt(M)/4).
struct SupplyChainParams {
  double alpha = kNaN;
  double gamma = kNaN;
};

// J = K = M sources, centers and stores. First stage x_jk, recourse y_ki,
// U = [0,1]^M. The problem carries the coupled set and the box baseline.
RhsRobustProblem gen_supply_chain(int M, std::uint64_t seed, const SupplyChainParams& params = {});
// Store groups used by the coupling: sizes two and three covering [0, M).
std::vector<std::vector<int>> supply_chain_groups(int M);

// Portfolio of m assets with 8-dim uncertainty u_i = (v_i, z_i) per asset.
// Variables (x, t, b), each of length m; maximise sum t.
struct PortfolioInstance {
  RobustProblem problem;       // coupled by v_1 = ... = v_m
  UncertaintySpec further;     // additionally coupled within sectors
  std::vector<int> sector;     // sector of each asset
};
PortfolioInstance gen_portfolio(int m, std::uint64_t seed);

// m stores on [0,10]^2; x_i in [0,20], recourse y_ij >= 0 at cost t_ij.
// U = [0,20]^m coupled by sum u <= 20 sqrt(m).
RhsRobustProblem gen_lot_sizing(int m, std::uint64_t seed);

// Factors, solved objectives and bound verdicts of one problem against its
// constraint-wise baseline. Static values come from the dual counterpart
// (cutting planes for non-polyhedral sets); adaptive values from Benders.
struct BoundReport {
  ShrinkageReport factors;
  Objectives z;
  BoundVerdict verdict;
  std::string adaptive_status;  // solve status of the coupled adaptive solve
};
BoundReport verify_problem_bounds(const RobustProblem& prob, const SolverOptions& opts = {},
                                  double tol = 1e-6);

enum class ExperimentFamily { kSupplyChain, kPortfolio, kLotSizing };
const char* family_name(ExperimentFamily family);
ExperimentFamily parse_family(const std::string& name);

// One sweep. params holds the swept value per run: alpha or gamma for the
// supply chain ("alpha" / "gamma" sweeps), 0 or 1 for the portfolio (common
// factors only / with sector coupling). An empty sweep draws the defaults.
struct ExperimentConfig {
  ExperimentFamily family = ExperimentFamily::kLotSizing;
  std::vector<int> sizes;
  int seeds = 20;
  std::uint64_t seed = 1;
  std::string sweep;
  std::vector<double> params;
  std::vector<Method> methods;
  SolverOptions solver;
  int threads = 1;
};

// Seed of instance `index` of size `size`: mix_seed(mix_seed(seed, size), index).
std::uint64_t instance_seed(std::uint64_t seed, int size, int index);

struct ResultRow {
  std::string family;
  int size = 0;
  std::uint64_t seed = 0;
  double param = kNaN;
  std::string method;
  std::string status;
  double objective = kNaN;
  double baseline = kNaN;  // z_ro for static methods, z_aro for adaptive ones
  double ratio = kNaN;
  double lower = kNaN;     // bound on ratio
  double upper = kNaN;
  double z_cp = kNaN;      // coupled static value
  double adapt_ratio = kNaN;  // objective / z_cp for adaptive methods
  double adapt_bound = kNaN;  // rho_adapt (min) or 1/rho_adapt (max)
  double rho_ro = kNaN;
  double gamma_ro = kNaN;
  double rho_aro = kNaN;
  double gamma_aro = kNaN;
  double rho_adapt = kNaN;
  double seconds = kNaN;
  std::string verdict;  // pass, fail, n/a or error
  std::string note;

  bool operator==(const ResultRow& other) const;
};

// Runs every instance and method; a failing instance yields rows with
// verdict "error" and the run continues. Rows are ordered by (size, param,
// instance, method) regardless of the thread count.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

// Fixed header order; numbers round-trip exactly.
std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rows_from_csv(const std::string& text);

struct PlotPoint {
  double x = 0.0;
  double mean = 0.0;
  double std = 0.0;
  double lb = 0.0;  // mean lower bound
  double ub = 0.0;  // mean upper bound
  int count = 0;
};
// Ratio statistics of one method grouped by x = "size" or "param".
std::vector<PlotPoint> plot_data(const std::vector<ResultRow>& rows, const std::string& method,
                                 const std::string& x_axis);
std::string plot_tsv(const std::vector<PlotPoint>& points);

}  // namespace coupledro

#endif  // COUPLEDRO_EXPERIMENTS_HPP_
