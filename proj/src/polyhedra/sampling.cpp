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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "coupledro/polyhedra.hpp"

namespace coupledro {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t CounterRng::next() {
  return splitmix64(seed_ ^ splitmix64(counter_++ + 0x632be59bd9b4e019ULL));
}

double CounterRng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(th);
  has_spare_ = true;
  return r * std::cos(th);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

std::vector<Vector> hit_and_run(const ConvexSet& set, int count, std::uint64_t seed,
                                const SamplerOptions& options) {
  const int n = set.dim();
  if (count <= 0) return {};
  ChebyshevResult start = chebyshev_center(set);
  AffineHull hull;
  if (start.radius > 1e-7) {
    hull.implicit_rows.assign(set.poly.rows(), false);
    hull.directions = Matrix::Identity(n, n);
  } else {
    hull = affine_hull(set);
  }
  const Matrix& D = hull.directions;
  const int k = static_cast<int>(D.cols());
  std::vector<Vector> out;
  if (k == 0) {
    out.assign(count, start.center);
    return out;
  }
  CounterRng rng(seed);
  Vector x = start.center;
  const int burn = options.burn_in_factor * n;
  const int thin = std::max(1, options.thinning_factor * n);
  const Polyhedron& p = set.poly;
  // Feasible step range [lo, hi] along d from x.
  auto chord = [&](const Vector& x, const Vector& d, double& lo, double& hi) {
    lo = -kInf;
    hi = kInf;
    for (int r = 0; r < p.rows(); ++r) {
      if (!hull.implicit_rows.empty() && hull.implicit_rows[r]) continue;
      const double ad = p.A.row(r).dot(d);
      const double slack = std::max(0.0, p.b(r) - p.A.row(r).dot(x));
      if (ad > 1e-14) hi = std::min(hi, slack / ad);
      else if (ad < -1e-14) lo = std::max(lo, slack / ad);
    }
    for (const BallConstraint& b : set.balls) {
      // ||x_S + t d_S||^2 <= radius^2.
      Vector xs = x.segment(b.offset, b.length);
      Vector ds = d.segment(b.offset, b.length);
      const double a = ds.squaredNorm();
      if (a <= 1e-300) continue;
      const double bq = 2.0 * xs.dot(ds);
      const double c = xs.squaredNorm() - b.radius * b.radius;
      const double disc = std::max(0.0, bq * bq - 4.0 * a * c);
      const double sq = std::sqrt(disc);
      lo = std::max(lo, (-bq - sq) / (2.0 * a));
      hi = std::min(hi, (-bq + sq) / (2.0 * a));
    }
  };
  auto step = [&]() {
    Vector g(k);
    for (int i = 0; i < k; ++i) g(i) = rng.normal();
    Vector d = D * g;
    const double nd = d.norm();
    if (nd == 0.0) return;
    d /= nd;
    double lo, hi;
    chord(x, d, lo, hi);
    if (!std::isfinite(lo) || !std::isfinite(hi))
      fail(ErrorCode::kUnsupported, "hit-and-run requires a bounded set");
    if (hi < lo) return;
    x += rng.uniform(lo, hi) * d;
  };
  for (int i = 0; i < burn; ++i) step();
  const bool origin_inside =
      options.rescale_to_boundary && contains(set, Vector::Zero(n), 1e-12);
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    for (int i = 0; i < thin; ++i) step();
    if (options.rescale_to_boundary && origin_inside) {
      const double g = gauge(set, x);
      out.push_back(g > 0.0 && std::isfinite(g) ? Vector(x / g) : x);
    } else if (options.rescale_to_boundary) {
      // Without the origin, scale outward from the center instead.
      const Vector d = x - start.center;
      double lo, hi;
      chord(start.center, d, lo, hi);
      out.push_back(d.norm() > 0.0 && std::isfinite(hi) ? Vector(start.center + hi * d) : x);
    } else {
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace coupledro
