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

#include "coupledro/polyhedra.hpp"

namespace coupledro {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int atom_width(const SetAtom& atom) {
  return std::visit(
      Overloaded{[](const Halfspaces& h) { return static_cast<int>(h.A.cols()); },
                 [](const Box& b) { return static_cast<int>(b.lower.size()); },
                 [](const BudgetRow& r) { return static_cast<int>(r.weights.size()); },
                 [](const L2Ball&) { return -1; }},
      atom);
}

void check_atom(const SetAtom& atom, int width, const std::string& where) {
  auto bad = [&](const std::string& msg) {
    fail(ErrorCode::kMalformedProgram, where + ": " + msg);
  };
  const int w = atom_width(atom);
  if (w >= 0 && w != width) bad("atom width does not match its scope");
  std::visit(Overloaded{
                 [&](const Halfspaces& h) {
                   if (h.A.rows() != h.b.size()) bad("halfspace rows and rhs differ");
                   if (!h.A.allFinite() || (h.b.array() != h.b.array()).any())
                     bad("non-finite halfspace data");
                 },
                 [&](const Box& b) {
                   if (b.upper.size() != b.lower.size()) bad("box bound sizes differ");
                   for (int i = 0; i < b.lower.size(); ++i)
                     if (!(b.lower(i) <= b.upper(i))) bad("box lower exceeds upper");
                 },
                 [&](const BudgetRow& r) {
                   if (!r.weights.allFinite() || !std::isfinite(r.limit))
                     bad("non-finite budget data");
                   if (r.weights.size() && r.weights.minCoeff() < 0.0)
                     bad("budget weights must be nonnegative");
                 },
                 [&](const L2Ball& ball) {
                   if (!(ball.radius >= 0.0) || !std::isfinite(ball.radius))
                     bad("ball radius must be finite and nonnegative");
                 }},
             atom);
}

void append_row(Polyhedron& p, const Eigen::RowVectorXd& a, double b) {
  const int r = p.rows();
  p.A.conservativeResize(r + 1, Eigen::NoChange);
  p.b.conservativeResize(r + 1);
  p.A.row(r) = a;
  p.b(r) = b;
}

}  // namespace

const char* atom_type_name(const SetAtom& atom) {
  return std::visit(Overloaded{[](const Halfspaces&) { return "halfspaces"; },
                               [](const Box&) { return "box"; },
                               [](const BudgetRow&) { return "budget"; },
                               [](const L2Ball&) { return "l2ball"; }},
                    atom);
}

bool is_monotone(const SetAtom& atom) {
  return std::visit(
      Overloaded{[](const Halfspaces&) { return false; },
                 [](const Box& b) { return b.lower.size() == 0 || b.lower.cwiseAbs().maxCoeff() == 0.0; },
                 [](const BudgetRow& r) { return r.weights.size() == 0 || r.weights.minCoeff() >= 0.0; },
                 [](const L2Ball&) { return true; }},
      atom);
}

void UncertaintySpec::validate() const {
  if (dim <= 0) fail(ErrorCode::kMalformedProgram, "uncertainty dimension must be positive");
  if (cw_atoms.size() != blocks.size())
    fail(ErrorCode::kMalformedProgram, "cw_atoms must have one entry per block");
  for (size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    if (b.offset < 0 || b.length <= 0 || b.offset + b.length > dim)
      fail(ErrorCode::kMalformedProgram, "block " + std::to_string(i) + " out of range");
    for (const SetAtom& a : cw_atoms[i]) check_atom(a, b.length, "block " + std::to_string(i));
  }
  for (const SetAtom& a : coupling_atoms) check_atom(a, dim, "coupling");
}

UncertaintySpec UncertaintySpec::without_coupling() const {
  UncertaintySpec s = *this;
  s.coupling_atoms.clear();
  return s;
}

bool UncertaintySpec::has_balls() const {
  for (const auto& list : cw_atoms)
    for (const SetAtom& a : list)
      if (std::holds_alternative<L2Ball>(a)) return true;
  for (const SetAtom& a : coupling_atoms)
    if (std::holds_alternative<L2Ball>(a)) return true;
  return false;
}

UncertaintySpec make_block_spec(int num_blocks, int width) {
  UncertaintySpec s;
  s.dim = num_blocks * width;
  for (int i = 0; i < num_blocks; ++i) s.blocks.push_back({i * width, width});
  s.cw_atoms.resize(num_blocks);
  return s;
}

void append_atom(ConvexSet& set, const SetAtom& atom, int offset, int length) {
  const int n = set.dim();
  std::visit(Overloaded{
                 [&](const Halfspaces& h) {
                   for (int r = 0; r < h.A.rows(); ++r) {
                     Eigen::RowVectorXd a = Eigen::RowVectorXd::Zero(n);
                     a.segment(offset, length) = h.A.row(r);
                     append_row(set.poly, a, h.b(r));
                   }
                 },
                 [&](const Box& b) {
                   for (int i = 0; i < length; ++i) {
                     if (std::isfinite(b.upper(i))) {
                       Eigen::RowVectorXd a = Eigen::RowVectorXd::Zero(n);
                       a(offset + i) = 1.0;
                       append_row(set.poly, a, b.upper(i));
                     }
                     if (std::isfinite(b.lower(i))) {
                       Eigen::RowVectorXd a = Eigen::RowVectorXd::Zero(n);
                       a(offset + i) = -1.0;
                       append_row(set.poly, a, -b.lower(i));
                     }
                   }
                 },
                 [&](const BudgetRow& r) {
                   Eigen::RowVectorXd a = Eigen::RowVectorXd::Zero(n);
                   a.segment(offset, length) = r.weights.transpose();
                   append_row(set.poly, a, r.limit);
                 },
                 [&](const L2Ball& ball) {
                   set.balls.push_back({offset, length, ball.radius});
                 }},
             atom);
}

ConvexSet flatten(const UncertaintySpec& spec) {
  spec.validate();
  ConvexSet set;
  set.poly.A = Matrix(0, spec.dim);
  set.poly.b = Vector(0);
  for (int i = 0; i < spec.num_blocks(); ++i)
    for (const SetAtom& a : spec.cw_atoms[i])
      append_atom(set, a, spec.blocks[i].offset, spec.blocks[i].length);
  for (const SetAtom& a : spec.coupling_atoms) append_atom(set, a, 0, spec.dim);
  return set;
}

ConvexSet flatten_block(const UncertaintySpec& spec, int block) {
  spec.validate();
  const int len = spec.blocks.at(block).length;
  ConvexSet set;
  set.poly.A = Matrix(0, len);
  set.poly.b = Vector(0);
  for (const SetAtom& a : spec.cw_atoms[block]) append_atom(set, a, 0, len);
  return set;
}

ConvexSet make_polyhedral(const Polyhedron& p) {
  ConvexSet s;
  s.poly = p;
  return s;
}

}  // namespace coupledro
