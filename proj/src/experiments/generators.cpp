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

#include <cmath>
#include <string>
#include <vector>

#include "coupledro/experiments.hpp"

namespace coupledro {

namespace {

double draw(CounterRng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

// Box blocks of width one with the given bounds.
UncertaintySpec scalar_boxes(int m, double lo, double hi) {
  UncertaintySpec s = make_block_spec(m, 1);
  for (int i = 0; i < m; ++i)
    s.cw_atoms[i].push_back(Box{Vector::Constant(1, lo), Vector::Constant(1, hi)});
  return s;
}

constexpr int kPortfolioWidth = 8;
constexpr int kCommon = 4;  // leading coordinates shared by every asset
constexpr int kPortfolioRows = 30;
constexpr int kSectors = 5;
constexpr int kRetries = 50;
// Nominal unit prices. Worst-case price terms reach about 60, so prices near
// the budget would leave no affordable asset.
constexpr double kPriceLow = 10.0;
constexpr double kPriceHigh = 30.0;

}  // namespace

std::vector<std::vector<int>> supply_chain_groups(int M) {
  std::vector<std::vector<int>> groups;
  int next = 0, take = 2;
  while (next < M) {
    const int rem = M - next;
    int size = take;
    if (rem == 2 || rem == 3) size = rem;
    else if (rem == 4) size = 2;
    std::vector<int> g;
    for (int j = 0; j < size; ++j) g.push_back(next + j);
    groups.push_back(g);
    next += size;
    take = take == 2 ? 3 : 2;
  }
  return groups;
}

RhsRobustProblem gen_supply_chain(int M, std::uint64_t seed, const SupplyChainParams& params) {
  if (M < 2) fail(ErrorCode::kMalformedProgram, "supply chain needs M >= 2");
  CounterRng rng(seed);
  const int n = M * M;
  RhsRobustProblem p;
  p.adaptive = true;
  p.c = Vector(n);
  p.d = Vector(n);
  // Costs: a path is available with probability 1/2; every center keeps one.
  std::vector<bool> available(n);
  for (int q = 0; q < n; ++q) available[q] = rng.uniform() < 0.5;
  for (int k = 0; k < M; ++k) {
    bool any = false;
    for (int j = 0; j < M; ++j) any = any || available[j * M + k];
    if (!any) available[static_cast<int>(rng.next() % M) * M + k] = true;
  }
  for (int q = 0; q < n; ++q) p.c(q) = available[q] ? draw(rng, 0.0, 5.0) : draw(rng, 0.0, 5001.0);
  for (int q = 0; q < n; ++q) p.d(q) = draw(rng, 0.0, 5.0);

  // Demand rows sum_k y_ki >= u_i with y_ki at k * M + i.
  p.A = Matrix::Zero(M, n);
  p.G = Matrix::Zero(M, n);
  for (int i = 0; i < M; ++i)
    for (int k = 0; k < M; ++k) p.G(i, k * M + i) = 1.0;
  // Flow: sum_i y_ki <= sum_j x_jk.
  p.det.A = Matrix::Zero(M, 2 * n);
  p.det.b = Vector::Zero(M);
  for (int k = 0; k < M; ++k) {
    for (int j = 0; j < M; ++j) p.det.A(k, j * M + k) = -1.0;
    for (int i = 0; i < M; ++i) p.det.A(k, n + k * M + i) = 1.0;
  }
  p.lower = Vector::Zero(2 * n);
  p.upper = Vector::Constant(2 * n, 10.0);

  p.baseline = scalar_boxes(M, 0.0, 1.0);
  p.uncertainty = *p.baseline;
  const auto groups = supply_chain_groups(M);
  int rows = 0;
  for (const auto& g : groups) rows += static_cast<int>(g.size()) - 1;
  Halfspaces h{Matrix::Zero(rows, M), Vector(rows)};
  int r = 0;
  for (const auto& g : groups) {
    const double alpha = std::isnan(params.alpha) ? draw(rng, 0.1, 0.2) : params.alpha;
    for (size_t j = 1; j < g.size(); ++j, ++r) {
      h.A(r, g[j]) = 1.0;
      h.A(r, g[0]) = -1.0;
      h.b(r) = -alpha;
    }
  }
  p.uncertainty.coupling_atoms.push_back(h);
  const double root = std::sqrt(static_cast<double>(M));
  const double gamma = std::isnan(params.gamma) ? draw(rng, root / 2.0, 0.75 * root) : params.gamma;
  p.uncertainty.coupling_atoms.push_back(L2Ball{gamma});
  return p;
}

PortfolioInstance gen_portfolio(int m, std::uint64_t seed) {
  if (m < kSectors) fail(ErrorCode::kMalformedProgram, "portfolio needs at least one asset per sector");
  CounterRng rng(seed);
  const int w8 = kPortfolioWidth, q = kPortfolioRows, dim = m * w8;

  // Shared system M u <= s anchored at w, perturbed per asset.
  Matrix Mbar(q, w8);
  Vector w(w8), sbar(q);
  for (int attempt = 0;; ++attempt) {
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < w8; ++b) Mbar(a, b) = draw(rng, -2.5, 2.5);
    if (is_bounded(Polyhedron{Mbar, Vector::Ones(q)})) break;
    if (attempt == kRetries) fail(ErrorCode::kUnbounded, "no bounded asset polyhedron drawn");
  }
  for (int b = 0; b < w8; ++b) w(b) = rng.normal();
  for (int a = 0; a < q; ++a) sbar(a) = Mbar.row(a).dot(w) + draw(rng, 0.0, 100.0);

  UncertaintySpec base = make_block_spec(m, w8);
  for (int i = 0; i < m; ++i) {
    Matrix Mi(q, w8);
    Vector si(q);
    for (int attempt = 0;; ++attempt) {
      for (int a = 0; a < q; ++a) {
        for (int b = 0; b < w8; ++b) Mi(a, b) = Mbar(a, b) + draw(rng, -0.5, 0.5);
        // Keep w strictly inside so every set and the coupled set are nonempty.
        si(a) = std::max(sbar(a) + draw(rng, -0.5, 0.5), Mi.row(a).dot(w) + 1e-3);
      }
      if (is_bounded(Polyhedron{Mi, si})) break;
      if (attempt == kRetries) fail(ErrorCode::kUnbounded, "no bounded asset polyhedron drawn");
    }
    base.cw_atoms[i].push_back(Halfspaces{Mi, si});
  }

  PortfolioInstance inst;
  RobustProblem& p = inst.problem;
  p.family = Family::kCoeff;
  p.sense = Sense::kMaximize;
  p.adaptive = false;
  p.n1 = 3 * m;
  p.n2 = 0;
  p.cost = Vector::Zero(3 * m);
  p.cost.segment(m, m).setOnes();
  p.lower = Vector::Constant(3 * m, -kInf);
  p.lower.head(m).setZero();
  p.upper = Vector::Constant(3 * m, kInf);
  for (int i = 0; i < m; ++i) {
    const double cbar = draw(rng, 80.0, 100.0);
    const double abar = draw(rng, kPriceLow, kPriceHigh);
    RobustRow ret{Vector::Zero(3 * m), 0.0, {}};
    ret.a(m + i) = 1.0;
    ret.a(i) = -cbar;
    RobustRow price{Vector::Zero(3 * m), 0.0, {}};
    price.a(i) = abar;
    price.a(2 * m + i) = -1.0;
    for (int j = 0; j < w8; ++j) {
      ret.terms.push_back({i * w8 + j, i, -draw(rng, -2.5, 2.5)});
      price.terms.push_back({i * w8 + j, i, draw(rng, -0.5, 0.5)});
    }
    p.rows.push_back(ret);
    p.rows.push_back(price);
  }
  // Budget, sector limits g_k = 8/m and the simplex.
  inst.sector.resize(m);
  for (int i = 0; i < m; ++i) inst.sector[i] = i % kSectors;
  p.det.A = Matrix::Zero(1 + kSectors, 3 * m);
  p.det.b = Vector(1 + kSectors);
  p.det.A.row(0).segment(2 * m, m).setOnes();
  p.det.b(0) = 100.0;
  for (int i = 0; i < m; ++i) p.det.A(1 + inst.sector[i], i) = 1.0;
  p.det.b.tail(kSectors).setConstant(8.0 / m);
  p.det.E = Matrix::Zero(1, 3 * m);
  p.det.E.row(0).head(m).setOnes();
  p.det.e = Vector::Ones(1);

  // v_1 = ... = v_m.
  UncertaintySpec coupled = base;
  Halfspaces eq{Matrix::Zero(2 * kCommon * (m - 1), dim), Vector::Zero(2 * kCommon * (m - 1))};
  for (int i = 1, r = 0; i < m; ++i) {
    for (int c = 0; c < kCommon; ++c, r += 2) {
      eq.A(r, c) = 1.0;
      eq.A(r, i * w8 + c) = -1.0;
      eq.A(r + 1, c) = -1.0;
      eq.A(r + 1, i * w8 + c) = 1.0;
    }
  }
  coupled.coupling_atoms.push_back(eq);
  p.baseline = base;
  p.uncertainty = coupled;

  // Within each sector the first asset dominates the others:
  // z_lead >= z_j + alpha_j coordinatewise, alpha_j ~ U(0, 1).
  std::vector<std::pair<int, int>> pairs;  // (lead, j)
  for (int k = 0; k < kSectors; ++k) {
    int lead = -1;
    for (int i = 0; i < m; ++i) {
      if (inst.sector[i] != k) continue;
      if (lead < 0) lead = i;
      else pairs.push_back({lead, i});
    }
  }
  std::vector<double> alpha(pairs.size());
  for (double& a : alpha) a = draw(rng, 0.0, 1.0);
  const int zw = w8 - kCommon;
  for (int attempt = 0;; ++attempt) {
    UncertaintySpec further = coupled;
    if (!pairs.empty()) {
      const int rows = static_cast<int>(pairs.size()) * zw;
      Halfspaces h{Matrix::Zero(rows, dim), Vector(rows)};
      for (size_t t = 0, r = 0; t < pairs.size(); ++t) {
        for (int c = 0; c < zw; ++c, ++r) {
          h.A(r, pairs[t].second * w8 + kCommon + c) = 1.0;
          h.A(r, pairs[t].first * w8 + kCommon + c) = -1.0;
          h.b(r) = -alpha[t];
        }
      }
      further.coupling_atoms.push_back(h);
    }
    if (!is_empty(intersect(further))) {
      inst.further = further;
      break;
    }
    if (attempt == kRetries) fail(ErrorCode::kEmptyCoupledSet, "sector coupling is infeasible");
    for (double& a : alpha) a *= 0.5;
  }
  return inst;
}

RhsRobustProblem gen_lot_sizing(int m, std::uint64_t seed) {
  if (m < 2) fail(ErrorCode::kMalformedProgram, "lot sizing needs m >= 2");
  CounterRng rng(seed);
  Matrix loc(m, 2);
  for (int i = 0; i < m; ++i)
    for (int c = 0; c < 2; ++c) loc(i, c) = draw(rng, 0.0, 10.0);
  const int n2 = m * m;
  RhsRobustProblem p;
  p.adaptive = true;
  p.c = Vector::Constant(m, 20.0);
  p.d = Vector(n2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) p.d(i * m + j) = (loc.row(i) - loc.row(j)).norm();
  // x_i + sum_j y_ji - sum_j y_ij >= u_i with y_ij at i * m + j.
  p.A = Matrix::Identity(m, m);
  p.G = Matrix::Zero(m, n2);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      p.G(i, j * m + i) += 1.0;
      p.G(i, i * m + j) -= 1.0;
    }
  }
  p.lower = Vector::Zero(m + n2);
  p.upper = Vector::Constant(m + n2, kInf);
  p.upper.head(m).setConstant(20.0);
  p.baseline = scalar_boxes(m, 0.0, 20.0);
  p.uncertainty = *p.baseline;
  p.uncertainty.coupling_atoms.push_back(
      BudgetRow{Vector::Ones(m), 20.0 * std::sqrt(static_cast<double>(m))});
  return p;
}

}  // namespace coupledro
