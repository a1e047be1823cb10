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

// Uncertainty sets built from atoms, and the geometric operations on them.
//
// An UncertaintySpec describes U-bar = U ∩ C where U = U_1 x ... x U_m is a
// product of per-block sets and C is a coupling set over the full vector.
// Atoms are halfspace systems, boxes, nonnegative budget rows and
// origin-centred Euclidean balls.

#ifndef COUPLEDRO_POLYHEDRA_HPP_
#define COUPLEDRO_POLYHEDRA_HPP_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "coupledro/common.hpp"
#include "coupledro/lp.hpp"

namespace coupledro {

struct Halfspaces {
  Matrix A;  // A u <= b
  Vector b;
};
struct Box {
  Vector lower;
  Vector upper;
};
struct BudgetRow {
  Vector weights;  // weights >= 0
  double limit = 0.0;
};
struct L2Ball {
  double radius = 0.0;  // ||u||_2 <= radius over the atom's scope
};
using SetAtom = std::variant<Halfspaces, Box, BudgetRow, L2Ball>;

const char* atom_type_name(const SetAtom& atom);
// True for atoms whose nonnegative part is closed under moving downwards:
// boxes with zero lower bound, budget rows and balls.
bool is_monotone(const SetAtom& atom);

struct Block {
  int offset = 0;
  int length = 0;
};

struct UncertaintySpec {
  int dim = 0;
  std::vector<Block> blocks;
  std::vector<std::vector<SetAtom>> cw_atoms;  // one list per block
  std::vector<SetAtom> coupling_atoms;         // over all dim coordinates

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  // Throws kMalformedProgram on inconsistent sizes.
  void validate() const;
  UncertaintySpec without_coupling() const;
  bool has_balls() const;
};

// Constructs a spec with m blocks of the given width and no atoms.
UncertaintySpec make_block_spec(int num_blocks, int width);

// {u : A u <= b}.
struct Polyhedron {
  Matrix A;
  Vector b;
  int dim() const { return static_cast<int>(A.cols()); }
  int rows() const { return static_cast<int>(A.rows()); }
};

// ||z_S|| <= radius over coordinates [offset, offset + length).
struct BallConstraint {
  int offset = 0;
  int length = 0;
  double radius = 0.0;
};

// Flattened intersection of atoms: a polyhedron plus Euclidean balls.
struct ConvexSet {
  Polyhedron poly;
  std::vector<BallConstraint> balls;
  int dim() const { return poly.dim(); }
  bool polyhedral() const { return balls.empty(); }
};

// Reads p as per-coordinate bounds when every row is axis-aligned.
bool as_box(const Polyhedron& p, Vector& lo, Vector& hi);

ConvexSet flatten(const UncertaintySpec& spec);
// U_i in its own block coordinates.
ConvexSet flatten_block(const UncertaintySpec& spec, int block);
ConvexSet make_polyhedral(const Polyhedron& p);
void append_atom(ConvexSet& set, const SetAtom& atom, int offset, int length);

// Second-order-cone constraint ||z_S|| <= radius + slope'z used by the
// outer-approximation solver.
struct SocConstraint {
  std::vector<int> vars;
  double radius = 0.0;
  Vector slope;  // empty means zero
};

struct ConicProgram {
  LinearProgram lp;
  std::vector<SocConstraint> cones;
};

// Solves an LP with additional cone constraints by tangent cuts. The result
// is optimal for the LP relaxation with cuts and violates each cone by at
// most tol * max(1, radius).
LpSolution solve_conic(const ConicProgram& prog, double tol = 1e-10,
                       int max_rounds = 20000);

// Adds the constraint "variables [first, first + set.dim()) lie in set".
void add_membership(LpBuilder& builder, std::vector<SocConstraint>& cones,
                    const ConvexSet& set, int first);
LpSolution solve_conic(const LpBuilder& builder,
                       const std::vector<SocConstraint>& cones, Sense sense);

bool contains(const ConvexSet& set, const Vector& u, double tol = 1e-9);

struct SupportResult {
  double value = 0.0;
  Vector argmax;
  bool bounded = true;
};
// sup { y'u : u in set }. Throws kEmptyCoupledSet on an empty set.
SupportResult support_function(const ConvexSet& set, const Vector& y);

// Builds U ∩ C and checks it is nonempty (kEmptyCoupledSet otherwise).
ConvexSet intersect(const UncertaintySpec& spec);
bool is_empty(const ConvexSet& set);

struct ProjectionOptions {
  int max_rows = 20000;
  double tol = 1e-9;
  bool prune = true;
};
// Fourier-Motzkin projection onto the coordinates listed in keep (in that
// order). Redundant rows are removed by LP after every elimination.
Polyhedron project(const Polyhedron& p, const std::vector<int>& keep,
                   const ProjectionOptions& options = {});
Polyhedron remove_redundant_rows(const Polyhedron& p, double tol = 1e-9);

// Down-monotone hull within the nonnegative orthant. Requires p ⊆ R^n_+.
Polyhedron down_hull(const Polyhedron& p, const ProjectionOptions& options = {});
// Returns the flattened set unchanged when every atom is monotone.
ConvexSet down_hull(const UncertaintySpec& spec, const ProjectionOptions& options = {});

using VertexList = std::vector<Vector>;
// Brute-force vertex enumeration for dim <= 12. Vertices are deduplicated.
// Large row counts switch from subset enumeration to double description.
VertexList enumerate_vertices(const Polyhedron& p, double tol = 1e-8);
VertexList enumerate_vertices_by_subsets(const Polyhedron& p, double tol = 1e-8);
VertexList enumerate_vertices_by_double_description(const Polyhedron& p);
bool is_bounded(const Polyhedron& p);

// Minkowski gauge: min {lambda >= 0 : w in lambda * set}. Requires the
// origin in the set (kOriginNotContained otherwise); +inf when no scaling
// of the set reaches w.
double gauge(const ConvexSet& set, const Vector& w, double tol = 1e-12);
// max {t : t * v in set} = 1 / gauge.
double max_scaling(const ConvexSet& set, const Vector& v);

// max {t >= 0 : t v <= s for some s in set}: scaling into the down-hull
// without forming it.
double max_scaling_into_down_hull(const ConvexSet& set, const Vector& v);
// max {t : exists u in set with u_block = t v}.
double max_scaling_into_projection(const ConvexSet& set, const Block& block,
                                   const Vector& v);

struct SymmetryResult {
  Vector point;
  double value = 0.0;  // sym(point, P); +inf for a single point
};
SymmetryResult symmetry_point(const Polyhedron& p);

struct ChebyshevResult {
  Vector center;
  double radius = 0.0;
};
// Largest ball inside the set, within its affine hull.
ChebyshevResult chebyshev_center(const ConvexSet& set);

// Rows of the polyhedral part that hold with equality on the whole set, and
// an orthonormal basis (columns) of the directions parallel to its affine
// hull. Zero-radius balls pin their coordinates.
struct AffineHull {
  std::vector<bool> implicit_rows;
  Matrix directions;
};
AffineHull affine_hull(const ConvexSet& set, double tol = 1e-9);

// Counter-based 64-bit generator: output k is a hash of (seed, k).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

struct SamplerOptions {
  int burn_in_factor = 100;
  int thinning_factor = 1;  // thinning = factor * dim
  // Scales each point outward from the origin onto the boundary, or from
  // the Chebyshev center when the origin lies outside the set.
  bool rescale_to_boundary = false;
};
// Hit-and-run samples; deterministic for a fixed seed.
std::vector<Vector> hit_and_run(const ConvexSet& set, int count, std::uint64_t seed,
                                const SamplerOptions& options = {});

}  // namespace coupledro

#endif  // COUPLEDRO_POLYHEDRA_HPP_
