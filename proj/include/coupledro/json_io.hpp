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

// JSON formats.
//
// Uncertainty set:
//   {"dim": n, "blocks": [[offset, length], ...],
//    "cw_atoms": [[atom, ...], ...], "coupling_atoms": [atom, ...]}
// Atoms:
//   {"type": "halfspaces", "A": [[...]], "b": [...]}
//   {"type": "box", "lower": [...], "upper": [...]}   (null = unbounded)
//   {"type": "budget", "weights": [...], "limit": x}
//   {"type": "l2ball", "radius": r}
//
// Problems are described in robust_model.hpp.

#ifndef COUPLEDRO_JSON_IO_HPP_
#define COUPLEDRO_JSON_IO_HPP_

#include <string>

#include <json.hpp>

#include "coupledro/polyhedra.hpp"

namespace coupledro {

using Json = nlohmann::json;

// All parsing failures raise Error(kParseError).
Json read_json_file(const std::string& path);

SetAtom atom_from_json(const Json& j);
Json atom_to_json(const SetAtom& atom);
UncertaintySpec uncertainty_from_json(const Json& j);
Json uncertainty_to_json(const UncertaintySpec& spec);

Vector vector_from_json(const Json& j);  // null entries read as +inf
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Json matrix_to_json(const Matrix& m);

}  // namespace coupledro

#endif  // COUPLEDRO_JSON_IO_HPP_
