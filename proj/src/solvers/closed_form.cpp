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

// Two nonlinear instances over U = [0,1]^2 and U-bar = U ∩ {u1 + u2 <= 1}
// whose optimal recourse is y_i(u) = 1/u_i. Both are maximisation problems.
//
// Reciprocal recourse:  max min_u c1 y1(u) + c2 y2(u),  u_i y_i(u) <= 1.
// Reciprocal first stage: max min_u c1 x1/u1 + c2 x2/u2,
//                         x_i <= y_i(u),  u_i y_i(u) <= 1.

#include <cmath>
#include <string>
#include <vector>

#include "coupledro/shrinkage.hpp"
#include "coupledro/solvers.hpp"

namespace coupledro {

namespace {

// inf of w1/u1 + w2/u2 over the positive part of the set. On the box the
// infimum sits at u = (1, 1); on the coupled set at u_i ∝ sqrt(w_i) on the
// line u1 + u2 = 1.
double min_reciprocal(const Vector& w, bool coupled) {
  if (!coupled) return w.sum();
  const double s = w.cwiseSqrt().sum();
  return s * s;
}

// Largest x with x_i <= 1/u_i for every u in either set: both reach u_i = 1.
Vector first_stage_cap() { return Vector::Ones(2); }

ClosedFormCheck make_check(const std::string& name, const std::string& ratio, double num,
                           double den, double expected, double lower, double upper) {
  ClosedFormCheck c;
  c.name = name;
  c.ratio = ratio;
  c.numerator = num;
  c.denominator = den;
  c.value = num / den;
  c.expected = expected;
  c.lower = lower;
  c.upper = upper;
  const double tol = 1e-12;
  c.within_bounds = c.value >= lower - tol && c.value <= upper + tol;
  c.attains = std::abs(c.value - expected) <= tol;
  return c;
}

std::string cost_label(const Vector& c) {
  auto f = [](double v) { return std::to_string(static_cast<int>(v)); };
  return "c=(" + f(c(0)) + "," + f(c(1)) + ")";
}

}  // namespace

std::vector<ClosedFormCheck> verify_closed_form_instances() {
  UncertaintySpec U = make_block_spec(2, 1);
  for (int i = 0; i < 2; ++i) U.cw_atoms[i].push_back(Box{Vector::Zero(1), Vector::Ones(1)});
  UncertaintySpec Ubar = U;
  Ubar.coupling_atoms.push_back(BudgetRow{Vector::Ones(2), 1.0});
  const ShrinkageReport f = compute_coeff_factors(U, Ubar);

  std::vector<ClosedFormCheck> out;
  const Vector c11 = Vector::Ones(2);
  Vector c10(2);
  c10 << 1.0, 0.0;

  for (const Vector& c : {c11, c10}) {
    const double z_aro = min_reciprocal(c, false);
    const double z_acp = min_reciprocal(c, true);
    const bool both = c.minCoeff() > 0.0;
    out.push_back(make_check("reciprocal recourse " + cost_label(c), "z_acp/z_aro", z_acp, z_aro,
                             both ? 1.0 / f.rho_aro : 1.0 / f.gamma_aro, 1.0 / f.gamma_aro,
                             1.0 / f.rho_aro));
  }

  for (const Vector& c : {c11, c10}) {
    const Vector x = first_stage_cap();
    const Vector w = c.cwiseProduct(x);
    const double z_aro = min_reciprocal(w, false);
    // A static y must satisfy every u in U-bar, which caps it at the same x.
    const double z_cp = min_reciprocal(w, true);
    const double z_acp = min_reciprocal(w, true);
    const bool both = c.minCoeff() > 0.0;
    const double g2 = 1.0 / (f.gamma_aro * f.gamma_aro);
    const double r2 = 1.0 / (f.rho_aro * f.rho_aro);
    out.push_back(make_check("reciprocal first stage " + cost_label(c), "z_acp/z_aro", z_acp,
                             z_aro, both ? r2 : g2, g2, r2));
    if (both) {
      const double a2 = 1.0 / (f.rho_adapt * f.rho_adapt);
      out.push_back(make_check("reciprocal first stage " + cost_label(c), "z_acp/z_cp", z_acp,
                               z_cp, a2, 1.0, a2));
    }
  }
  return out;
}

}  // namespace coupledro
