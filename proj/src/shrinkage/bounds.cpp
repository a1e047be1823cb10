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

#include "coupledro/shrinkage.hpp"

namespace coupledro {

namespace {

double inv(double x) { return x == 0.0 ? kInf : 1.0 / x; }

Json number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

// ratio = num / den with 0 < num <= den (or den <= num when increasing).
BoundCheck make_check(const std::string& name, const std::string& ratio, double num, double den,
                      double lower, double upper, bool num_le_den, double tol, bool strict) {
  BoundCheck c;
  c.name = name;
  c.ratio = ratio;
  c.lower = lower;
  c.upper = upper;
  if (std::isnan(num) || std::isnan(den)) {
    c.note = "objective missing";
    return c;
  }
  const double scale = tol * (1.0 + std::abs(den));
  const bool positive = num > 0.0 && den > 0.0 && std::isfinite(num) && std::isfinite(den);
  const bool ordered = num_le_den ? num <= den + scale : den <= num + scale;
  if (!positive || !ordered) {
    c.note = !positive ? "objectives not positive and finite" : "objectives not ordered";
    if (strict) fail(ErrorCode::kAssumptionViolated, name + ": " + c.note);
    return c;
  }
  c.applicable = true;
  c.value = num / den;
  c.pass = c.value >= lower - tol && c.value <= upper + tol;
  return c;
}

}  // namespace

bool BoundVerdict::all_pass() const {
  for (const BoundCheck& c : checks)
    if (c.applicable && !c.pass) return false;
  return true;
}

BoundVerdict bound_check(const ShrinkageReport& r, const Objectives& z, double tol, bool strict) {
  BoundVerdict v;
  if (!r.coefficient) {
    v.checks.push_back(make_check("static", "z_cp/z_ro", z.z_cp, z.z_ro, r.rho_ro, r.gamma_ro,
                                  true, tol, strict));
    v.checks.push_back(make_check("adaptive", "z_acp/z_aro", z.z_acp, z.z_aro, r.rho_aro,
                                  r.gamma_aro, true, tol, strict));
    v.checks.push_back(make_check("adaptivity", "z_acp/z_cp", z.z_acp, z.z_cp, r.rho_adapt, 1.0,
                                  true, tol, strict));
  } else {
    v.checks.push_back(make_check("static", "z_cp/z_ro", z.z_cp, z.z_ro, inv(r.gamma_ro),
                                  inv(r.rho_ro), false, tol, strict));
    v.checks.push_back(make_check("adaptive", "z_acp/z_aro", z.z_acp, z.z_aro,
                                  inv(r.gamma_aro), inv(r.rho_aro), false, tol, strict));
    v.checks.push_back(make_check("adaptivity", "z_acp/z_cp", z.z_acp, z.z_cp, 1.0,
                                  inv(r.rho_adapt), false, tol, strict));
  }
  return v;
}

Json report_to_json(const ShrinkageReport& r) {
  Json j;
  j["family"] = r.coefficient ? "coeff" : "rhs";
  j["rho_ro"] = number(r.rho_ro);
  j["gamma_ro"] = number(r.gamma_ro);
  j["rho_aro"] = number(r.rho_aro);
  j["gamma_aro"] = number(r.gamma_aro);
  j["rho_adapt"] = number(r.rho_adapt);
  j["sources"] = {{"rho_ro", factor_source_name(r.src_rho_ro)},
                  {"gamma_ro", factor_source_name(r.src_gamma_ro)},
                  {"rho_aro", factor_source_name(r.src_rho_aro)},
                  {"gamma_aro", factor_source_name(r.src_gamma_aro)},
                  {"rho_adapt", factor_source_name(r.src_rho_adapt)}};
  Json per = Json::array();
  for (const auto& [a, b] : r.per_dim) per.push_back({number(a), number(b)});
  j["per_dim"] = per;
  return j;
}

Json verdict_to_json(const BoundVerdict& verdict) {
  Json arr = Json::array();
  for (const BoundCheck& c : verdict.checks) {
    Json j;
    j["name"] = c.name;
    j["ratio"] = c.ratio;
    j["value"] = number(c.value);
    j["lower"] = number(c.lower);
    j["upper"] = number(c.upper);
    j["applicable"] = c.applicable;
    j["pass"] = c.pass;
    if (!c.note.empty()) j["note"] = c.note;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace coupledro
