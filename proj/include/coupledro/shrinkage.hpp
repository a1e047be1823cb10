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

// Shrinkage factors between a constraint-wise set U and a coupled set
// U-bar, and the objective-ratio bounds they imply.
//
// For sets S1, S2: rho(S1, S2) = max {r : r S1 ⊆ S2} and
// gamma(S1, S2) = min {g : S2 ⊆ g S1}.
//
// Right-hand-side family (blocks of width 1, sets in the nonnegative
// orthant, everything taken on down-hulls):
//   rho_ro, gamma_ro   between U and the product of projections of U-bar
//   rho_aro, gamma_aro between U and U-bar
//   rho_adapt          between the product of projections and U-bar
// Coefficient family (0 in U-bar): the same quantities without down-hulls,
// with rho_ro = min_i r_i and gamma_ro = max_i s_i over per-block factors.

#ifndef COUPLEDRO_SHRINKAGE_HPP_
#define COUPLEDRO_SHRINKAGE_HPP_

#include <string>
#include <utility>
#include <vector>

#include "coupledro/json_io.hpp"
#include "coupledro/polyhedra.hpp"

namespace coupledro {

enum class FactorSource { kClosedForm, kLpComputed };
const char* factor_source_name(FactorSource source);

struct ShrinkageReport {
  bool coefficient = false;
  double rho_ro = 1.0;
  double gamma_ro = 1.0;
  double rho_aro = 1.0;
  double gamma_aro = 1.0;
  double rho_adapt = 1.0;
  // (d_i, dbar_i) for the RHS family, (r_i, s_i) for the coefficient family.
  std::vector<std::pair<double, double>> per_dim;
  FactorSource src_rho_ro = FactorSource::kLpComputed;
  FactorSource src_gamma_ro = FactorSource::kLpComputed;
  FactorSource src_rho_aro = FactorSource::kLpComputed;
  FactorSource src_gamma_aro = FactorSource::kLpComputed;
  FactorSource src_rho_adapt = FactorSource::kLpComputed;
};

// Per-coordinate maxima of the set (equal to those of its down-hull). With
// use_down_hull the set must lie in the nonnegative orthant.
Vector projection_bounds(const UncertaintySpec& spec, bool use_down_hull = true);

// Throws kNotNested unless Ubar ⊆ U. Halfspace rows are checked exactly by
// support functions; balls by norm maximisation when supported, otherwise
// by 10,000 hit-and-run samples.
void check_nesting(const UncertaintySpec& U, const UncertaintySpec& Ubar, double tol = 1e-8);

// sup over s1 of the gauge of s2 (s2 must contain the origin).
double sup_gauge(const ConvexSet& s1, const ConvexSet& s2);
// The same with s1 replaced by the product of the block projections of ubar.
double sup_gauge_over_projections(const ConvexSet& ubar, const std::vector<Block>& blocks,
                                  const ConvexSet& s2);
// sup ||u_S|| over the set for S = [offset, offset + length). Supported for
// polyhedra (by vertices) and for one ball whose scope T contains S when
// T = S or the polyhedral part is a box containing the origin.
double max_block_norm(const ConvexSet& set, int offset, int length);

ShrinkageReport compute_rhs_factors(const UncertaintySpec& U, const UncertaintySpec& Ubar);
ShrinkageReport compute_coeff_factors(const UncertaintySpec& U, const UncertaintySpec& Ubar);

// rho_adapt of {0 <= u <= alpha, ||u||_q <= beta} in R^m, for
// alpha <= beta <= alpha m^(1/q). q may be +inf.
double closed_form_q_norm(double alpha, double beta, int m, double q);

// Returns {u - shift : u in spec} as a new set. Balls must not be shifted.
UncertaintySpec translate_spec(const UncertaintySpec& spec, const Vector& shift);

struct Translation {
  UncertaintySpec U;
  UncertaintySpec Ubar;
  Vector shift;
  bool orthant_shift = false;  // shifted by the lower corner instead
};
// Moves both sets by -u_s. If shifting Ubar by its coordinate minima lands
// it in the nonnegative orthant with the origin inside, that shift is used;
// otherwise u_s is the point of symmetry of Ubar.
Translation translate_by_symmetry_point(const UncertaintySpec& U, const UncertaintySpec& Ubar);

// Invariants a report must satisfy; returns a description of each violation.
// m is the number of blocks and p the block width.
std::vector<std::string> report_invariant_violations(const ShrinkageReport& r, int m, int p,
                                                     bool nonnegative, double tol = 1e-7);

struct Objectives {
  double z_ro = kNaN;
  double z_cp = kNaN;
  double z_aro = kNaN;
  double z_acp = kNaN;
};

struct BoundCheck {
  std::string name;   // static, adaptive, adaptivity
  std::string ratio;  // e.g. "z_cp/z_ro"
  double value = kNaN;
  double lower = 0.0;
  double upper = kInf;
  bool applicable = false;  // objectives present and sign assumptions met
  bool pass = true;
  std::string note;
};

struct BoundVerdict {
  std::vector<BoundCheck> checks;
  bool all_pass() const;
};

// RHS family (minimisation): rho <= ratio <= gamma, z_acp/z_cp >= rho_adapt.
// Coefficient family (maximisation): 1/gamma <= ratio <= 1/rho,
// z_acp/z_cp <= 1/rho_adapt. A check whose positivity or ordering
// assumption fails is marked not applicable, or raises
// kAssumptionViolated when strict is set.
BoundVerdict bound_check(const ShrinkageReport& report, const Objectives& z,
                         double tol = 1e-6, bool strict = false);

Json report_to_json(const ShrinkageReport& report);
Json verdict_to_json(const BoundVerdict& verdict);

}  // namespace coupledro

#endif  // COUPLEDRO_SHRINKAGE_HPP_
