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

// Robust linear problems and their deterministic reformulations.
//
// Decisions are v = [x; y] with x here-and-now (n1) and y (n2) either static
// or adjustable. Every robust row has the form
//
//   a'v + sum_t coef_t * u_{k_t} * (v_{var_t} or 1) <= rhs   for all u in U,
//
// so the uncertain coefficient vector w(v) = L v + f is affine in v. Two
// families lower into this form:
//
//   RHS:          A_i x + G_i y >= b_i + u_i,  minimise c'x + d'y
//   coefficient:  u_i' v_{S_i} + A_i x + G_i y <= b_i, maximise c'x + d'y
//
// In the adjustable case the objective becomes c'x plus the worst case of
// d'y(u). Deterministic rows and variable bounds apply to every y(u).

#ifndef COUPLEDRO_ROBUST_MODEL_HPP_
#define COUPLEDRO_ROBUST_MODEL_HPP_

#include <optional>
#include <string>
#include <vector>

#include "coupledro/json_io.hpp"
#include "coupledro/lp.hpp"
#include "coupledro/polyhedra.hpp"

namespace coupledro {

enum class Family { kRhs, kCoeff, kGeneral };
const char* family_name(Family family);

// Coefficient coef multiplying u_k, times v_var when var >= 0.
struct UTerm {
  int k = 0;
  int var = -1;
  double coef = 0.0;
};

struct RobustRow {
  Vector a;
  double rhs = 0.0;
  std::vector<UTerm> terms;
  bool uncertain() const { return !terms.empty(); }
};

// Rows over v that hold for every realisation: A v <= b, E v = e.
struct DetConstraints {
  Matrix A;
  Vector b;
  Matrix E;
  Vector e;
};

struct RobustProblem {
  Family family = Family::kGeneral;
  Sense sense = Sense::kMinimize;
  bool adaptive = false;
  int n1 = 0;
  int n2 = 0;
  Vector cost;  // over v
  std::vector<RobustRow> rows;
  DetConstraints det;
  Vector lower;  // over v; -inf / +inf allowed
  Vector upper;
  UncertaintySpec uncertainty;  // the coupled set
  UncertaintySpec baseline;     // the constraint-wise set

  int num_vars() const { return n1 + n2; }
  // Throws kMalformedProgram on inconsistent sizes or term indices.
  void validate() const;
  // True when no uncertain term multiplies an adjustable variable.
  bool fixed_recourse() const;
  RobustProblem with_uncertainty(const UncertaintySpec& spec) const;
  RobustProblem as_baseline() const { return with_uncertainty(baseline); }
  RobustProblem as_static() const;
};

struct RhsRobustProblem {
  Vector c, d;
  Matrix A, G;  // m x n1, m x n2
  Vector b;     // empty means zero
  UncertaintySpec uncertainty;
  std::optional<UncertaintySpec> baseline;
  bool adaptive = false;
  DetConstraints det;
  Vector lower, upper;  // empty means v >= 0
};

struct CoeffRobustProblem {
  Vector c, d;
  Matrix A, G;  // deterministic coefficients, may be empty
  Vector b;
  UncertaintySpec uncertainty;
  std::optional<UncertaintySpec> baseline;
  bool adaptive = false;
  DetConstraints det;
  Vector lower, upper;  // empty means free
  // Variables multiplied by block i. Empty means the first p entries of v.
  std::vector<std::vector<int>> support;
};

RobustProblem lower(const RhsRobustProblem& prob);
RobustProblem lower(const CoeffRobustProblem& prob);

// y(u) = z + V u.
struct AffineDecisionRule {
  Vector z;
  Matrix V;
  Vector evaluate(const Vector& u) const { return z + V * u; }
};

// Uncertain coefficient vector w(v) of a row, over the uncertainty dim.
Vector row_coefficients(const RobustRow& row, const Vector& v, int dim);
// a'v + w(v)'u - rhs.
double row_violation(const RobustRow& row, const Vector& v, const Vector& u);
// Largest violation of the deterministic rows and bounds at v.
double det_violation(const RobustProblem& prob, const Vector& v);
double objective_value(const RobustProblem& prob, const Vector& v);

// The coupled set as a polyhedron. Balls implied by the polyhedral atoms
// are dropped; any other ball raises kNonPolyhedralAtomInRC.
ConvexSet polyhedral_set(const UncertaintySpec& spec);

// A reformulated LP. Decision v occupies variables [0, num_vars).
struct Reformulation {
  LinearProgram lp;
  int num_vars = 0;
  int epigraph = -1;  // LDR objective variable
  int rule_z = -1;    // LDR intercept, n2 entries
  int rule_V = -1;    // LDR slope, n2 x dim entries in row-major order
};

// Static problem with every uncertain row replaced by its worst case, for
// rows whose uncertain coefficients do not depend on v (RHS family).
Reformulation build_rc_projection(const RobustProblem& prob);
// Static robust counterpart by LP duality over the polyhedral set:
// a'v + h'z <= rhs, Q'z = w(v), z >= 0 for each uncertain row.
Reformulation build_rc_static(const RobustProblem& prob);
// Linear decision rule counterpart y(u) = z + V u (fixed recourse only).
Reformulation build_rc_ldr(const RobustProblem& prob);

AffineDecisionRule extract_rule(const RobustProblem& prob, const Reformulation& rf,
                                const Vector& solution);

struct TranslatedProblem {
  RobustProblem problem;
  Vector shift;  // u = shift + u'
  bool orthant_shift = false;
};
// Moves the coupled set so it contains the origin and rewrites every row
// in terms of u' = u - shift.
TranslatedProblem canonical_translate(const RobustProblem& prob);

// The two-store supply chain: costs (c11, c22) and (s11, s12, s22),
// capacities t and p, demand u in the given coupled set.
RobustProblem supply_chain_intro(const UncertaintySpec& coupled, bool adaptive,
                                 double c11 = 100.0, double c22 = 100.0, double s11 = 200.0,
                                 double s12 = 200.0, double s22 = 200.0, double t = 1.0,
                                 double p = 1.0);
// The same instance before lowering, e.g. for JSON export.
RhsRobustProblem supply_chain_intro_rhs(const UncertaintySpec& coupled, bool adaptive,
                                        double c11 = 100.0, double c22 = 100.0,
                                        double s11 = 200.0, double s12 = 200.0,
                                        double s22 = 200.0, double t = 1.0, double p = 1.0);
UncertaintySpec intro_box();
UncertaintySpec intro_scenario_a(double eta);
UncertaintySpec intro_scenario_b(double alpha, double beta);

// JSON problem format:
//   {"family": "rhs"|"coeff", "adaptive": bool, "c": [...], "d": [...],
//    "A": [[...]], "G": [[...]], "b": [...],
//    "bounds": {"lower": [...], "upper": [...]},
//    "det_constraints": {"A": [[...]], "b": [...], "E": [[...]], "e": [...]},
//    "support": [[var, ...], ...], "uncertainty": <set>,
//    "baseline_uncertainty": <set>}
RobustProblem problem_from_json(const Json& j);
Json problem_to_json(const RhsRobustProblem& prob);
Json problem_to_json(const CoeffRobustProblem& prob);

}  // namespace coupledro

#endif  // COUPLEDRO_ROBUST_MODEL_HPP_
