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

#include <string>

#include "coupledro/robust_model.hpp"

namespace coupledro {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { fail(ErrorCode::kParseError, msg); }

Vector opt_vector(const Json& j, const char* key) {
  return j.contains(key) ? vector_from_json(j.at(key)) : Vector(0);
}

Matrix opt_matrix(const Json& j, const char* key) {
  return j.contains(key) ? matrix_from_json(j.at(key)) : Matrix(0, 0);
}

DetConstraints det_from_json(const Json& j) {
  DetConstraints d;
  if (!j.is_object()) parse_fail("det_constraints must be an object");
  d.A = opt_matrix(j, "A");
  d.b = opt_vector(j, "b");
  d.E = opt_matrix(j, "E");
  d.e = opt_vector(j, "e");
  return d;
}

Json det_to_json(const DetConstraints& d) {
  Json j = Json::object();
  if (d.A.rows() > 0) {
    j["A"] = matrix_to_json(d.A);
    j["b"] = vector_to_json(d.b);
  }
  if (d.E.rows() > 0) {
    j["E"] = matrix_to_json(d.E);
    j["e"] = vector_to_json(d.e);
  }
  return j;
}

template <typename P>
void read_common(const Json& j, P& p) {
  if (!j.contains("c")) parse_fail("missing field 'c'");
  p.c = vector_from_json(j.at("c"));
  p.d = opt_vector(j, "d");
  p.A = opt_matrix(j, "A");
  p.G = opt_matrix(j, "G");
  p.b = opt_vector(j, "b");
  p.adaptive = j.value("adaptive", false);
  if (j.contains("det_constraints")) p.det = det_from_json(j.at("det_constraints"));
  if (j.contains("bounds")) {
    const Json& b = j.at("bounds");
    if (!b.is_object()) parse_fail("bounds must be an object");
    p.lower = opt_vector(b, "lower");
    p.upper = opt_vector(b, "upper");
  }
  if (!j.contains("uncertainty")) parse_fail("missing field 'uncertainty'");
  p.uncertainty = uncertainty_from_json(j.at("uncertainty"));
  if (j.contains("baseline_uncertainty"))
    p.baseline = uncertainty_from_json(j.at("baseline_uncertainty"));
}

template <typename P>
Json write_common(const P& p, const char* family) {
  Json j;
  j["family"] = family;
  j["adaptive"] = p.adaptive;
  j["c"] = vector_to_json(p.c);
  j["d"] = vector_to_json(p.d);
  if (p.A.size() > 0) j["A"] = matrix_to_json(p.A);
  if (p.G.size() > 0) j["G"] = matrix_to_json(p.G);
  if (p.b.size() > 0) j["b"] = vector_to_json(p.b);
  if (p.lower.size() > 0 || p.upper.size() > 0)
    j["bounds"] = {{"lower", vector_to_json(p.lower)}, {"upper", vector_to_json(p.upper)}};
  Json det = det_to_json(p.det);
  if (!det.empty()) j["det_constraints"] = det;
  j["uncertainty"] = uncertainty_to_json(p.uncertainty);
  if (p.baseline) j["baseline_uncertainty"] = uncertainty_to_json(*p.baseline);
  return j;
}

}  // namespace

RobustProblem problem_from_json(const Json& j) {
  if (!j.is_object()) parse_fail("problem must be a JSON object");
  try {
    const std::string family = j.value("family", std::string());
    if (family == "rhs") {
      RhsRobustProblem p;
      read_common(j, p);
      return lower(p);
    }
    if (family == "coeff") {
      CoeffRobustProblem p;
      read_common(j, p);
      if (j.contains("support")) {
        for (const Json& s : j.at("support")) {
          std::vector<int> vars;
          for (const Json& v : s) vars.push_back(v.get<int>());
          p.support.push_back(std::move(vars));
        }
      }
      return lower(p);
    }
    parse_fail("family must be \"rhs\" or \"coeff\"");
  } catch (const Json::exception& e) {
    parse_fail(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    parse_fail(e.what());
  }
}

Json problem_to_json(const RhsRobustProblem& prob) { return write_common(prob, "rhs"); }

Json problem_to_json(const CoeffRobustProblem& prob) {
  Json j = write_common(prob, "coeff");
  if (!prob.support.empty()) j["support"] = prob.support;
  return j;
}

}  // namespace coupledro
