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
#include <fstream>
#include <string>

#include "coupledro/json_io.hpp"

namespace coupledro {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { fail(ErrorCode::kParseError, msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (j.is_null()) return kInf;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  if (!j.is_number()) parse_fail(std::string(what) + " must be a number");
  return j.get<double>();
}

Json number_to_json(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    parse_fail(path + ": " + e.what());
  }
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("expected an array of numbers");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(i) = number(j[i], "vector entry");
  return v;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("expected an array of rows");
  if (j.empty()) return Matrix(0, 0);
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(j.size(), cols);
  for (size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) parse_fail("ragged matrix");
    for (size_t c = 0; c < cols; ++c) m(r, c) = number(j[r][c], "matrix entry");
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json j = Json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(number_to_json(v(i)));
  return j;
}

Json matrix_to_json(const Matrix& m) {
  Json j = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(number_to_json(m(r, c)));
    j.push_back(row);
  }
  return j;
}

SetAtom atom_from_json(const Json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "halfspaces") {
    Halfspaces h{matrix_from_json(field(j, "A")), vector_from_json(field(j, "b"))};
    return h;
  }
  if (type == "box") {
    Box b;
    b.upper = vector_from_json(field(j, "upper"));
    if (field(j, "lower").is_array()) {
      const Json& lo = j.at("lower");
      b.lower = Vector(lo.size());
      for (size_t i = 0; i < lo.size(); ++i)
        b.lower(i) = lo[i].is_null() ? -kInf : number(lo[i], "box lower");
    } else {
      parse_fail("box lower must be an array");
    }
    return b;
  }
  if (type == "budget") {
    BudgetRow r{vector_from_json(field(j, "weights")), number(field(j, "limit"), "limit")};
    return r;
  }
  if (type == "l2ball") return L2Ball{number(field(j, "radius"), "radius")};
  parse_fail("unknown atom type '" + type + "'");
}

Json atom_to_json(const SetAtom& atom) {
  Json j;
  j["type"] = atom_type_name(atom);
  if (auto* h = std::get_if<Halfspaces>(&atom)) {
    j["A"] = matrix_to_json(h->A);
    j["b"] = vector_to_json(h->b);
  } else if (auto* b = std::get_if<Box>(&atom)) {
    j["lower"] = vector_to_json(b->lower);
    j["upper"] = vector_to_json(b->upper);
  } else if (auto* r = std::get_if<BudgetRow>(&atom)) {
    j["weights"] = vector_to_json(r->weights);
    j["limit"] = r->limit;
  } else if (auto* ball = std::get_if<L2Ball>(&atom)) {
    j["radius"] = ball->radius;
  }
  return j;
}

UncertaintySpec uncertainty_from_json(const Json& j) {
  UncertaintySpec s;
  try {
    s.dim = field(j, "dim").get<int>();
    for (const Json& b : field(j, "blocks")) {
      if (b.is_array() && b.size() == 2) s.blocks.push_back({b[0].get<int>(), b[1].get<int>()});
      else if (b.is_object()) s.blocks.push_back({field(b, "offset").get<int>(), field(b, "length").get<int>()});
      else parse_fail("block must be [offset, length]");
    }
    if (j.contains("cw_atoms")) {
      for (const Json& list : j.at("cw_atoms")) {
        std::vector<SetAtom> atoms;
        for (const Json& a : list) atoms.push_back(atom_from_json(a));
        s.cw_atoms.push_back(std::move(atoms));
      }
    } else {
      s.cw_atoms.resize(s.blocks.size());
    }
    if (j.contains("coupling_atoms"))
      for (const Json& a : j.at("coupling_atoms")) s.coupling_atoms.push_back(atom_from_json(a));
  } catch (const Json::exception& e) {
    parse_fail(std::string("uncertainty set: ") + e.what());
  }
  try {
    s.validate();
  } catch (const Error& e) {
    parse_fail(e.what());
  }
  return s;
}

Json uncertainty_to_json(const UncertaintySpec& spec) {
  Json j;
  j["dim"] = spec.dim;
  j["blocks"] = Json::array();
  for (const Block& b : spec.blocks) j["blocks"].push_back({b.offset, b.length});
  j["cw_atoms"] = Json::array();
  for (const auto& list : spec.cw_atoms) {
    Json arr = Json::array();
    for (const SetAtom& a : list) arr.push_back(atom_to_json(a));
    j["cw_atoms"].push_back(arr);
  }
  j["coupling_atoms"] = Json::array();
  for (const SetAtom& a : spec.coupling_atoms) j["coupling_atoms"].push_back(atom_to_json(a));
  return j;
}

}  // namespace coupledro
