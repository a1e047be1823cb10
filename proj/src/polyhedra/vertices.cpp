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
#include <cstdint>
#include <string>
#include <vector>

#include "coupledro/polyhedra.hpp"

namespace coupledro {

namespace {

constexpr int kMaxVertexDim = 12;
constexpr double kSubsetBudget = 2e5;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void push_unique(VertexList& out, const Vector& v, double tol) {
  for (const Vector& w : out)
    if ((w - v).lpNorm<Eigen::Infinity>() <= tol * (1.0 + v.lpNorm<Eigen::Infinity>())) return;
  out.push_back(v);
}

bool feasible(const Polyhedron& p, const Vector& x, double tol) {
  if (p.rows() == 0) return true;
  Vector ax = p.A * x;
  for (int r = 0; r < p.rows(); ++r)
    if (ax(r) > p.b(r) + tol * (1.0 + std::abs(p.b(r)))) return false;
  return true;
}

VertexList brute_force(const Polyhedron& p, double tol) {
  const int d = p.dim();
  const int m = p.rows();
  VertexList out;
  if (m < d) return out;
  std::vector<int> pick(d);
  for (int i = 0; i < d; ++i) pick[i] = i;
  Matrix A(d, d);
  Vector b(d);
  while (true) {
    for (int i = 0; i < d; ++i) {
      A.row(i) = p.A.row(pick[i]);
      b(i) = p.b(pick[i]);
    }
    Eigen::FullPivLU<Matrix> lu(A);
    lu.setThreshold(1e-10);
    if (lu.rank() == d) {
      Vector x = lu.solve(b);
      if (feasible(p, x, tol)) push_unique(out, x, tol);
    }
    int i = d - 1;
    while (i >= 0 && pick[i] == m - d + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

// Double description on the homogenized cone {(x, t) : A x - b t <= 0, t >= 0}.
class DoubleDescription {
 public:
  explicit DoubleDescription(const Polyhedron& p, double tol) : tol_(tol) {
    const int d = p.dim();
    n_ = d + 1;
    H_ = Matrix::Zero(p.rows() + 1, n_);
    H_.topLeftCorner(p.rows(), d) = p.A;
    H_.block(0, d, p.rows(), 1) = -p.b;
    H_(p.rows(), d) = -1.0;
    for (int r = 0; r < H_.rows(); ++r) {
      const double s = H_.row(r).norm();
      if (s > 0) H_.row(r) /= s;
    }
    words_ = (static_cast<int>(H_.rows()) + 63) / 64;
  }

  VertexList run() {
    const int m = static_cast<int>(H_.rows());
    // Initial simplicial cone from n_ independent rows.
    std::vector<int> basis;
    Matrix acc(0, n_);
    for (int r = m - 1; r >= 0 && static_cast<int>(basis.size()) < n_; --r) {
      Matrix trial(acc.rows() + 1, n_);
      trial << acc, H_.row(r);
      Eigen::FullPivLU<Matrix> lu(trial);
      lu.setThreshold(1e-10);
      if (lu.rank() == trial.rows()) {
        acc = trial;
        basis.push_back(r);
      }
    }
    if (static_cast<int>(basis.size()) < n_)
      fail(ErrorCode::kUnsupported, "vertex enumeration of an unbounded polyhedron");
    Matrix inv = -acc.inverse();
    done_.assign(m, false);
    for (int r : basis) done_[r] = true;
    for (int k = 0; k < n_; ++k) add_ray(inv.col(k));
    for (int r = 0; r < m; ++r) {
      if (done_[r]) continue;
      add_constraint(r);
      done_[r] = true;
    }
    VertexList out;
    const int d = n_ - 1;
    for (const Ray& ray : rays_) {
      const double t = ray.v(d);
      if (t <= tol_ * ray.v.norm()) continue;
      push_unique(out, ray.v.head(d) / t, 1e-8);
    }
    return out;
  }

 private:
  struct Ray {
    Vector v;
    std::vector<std::uint64_t> zero;
  };

  void set_bit(std::vector<std::uint64_t>& z, int r) { z[r / 64] |= (1ULL << (r % 64)); }

  void add_ray(const Vector& v) {
    Ray ray{v / v.norm(), std::vector<std::uint64_t>(words_, 0)};
    Vector hv = H_ * ray.v;
    // Zero sets only record processed rows.
    for (int r = 0; r < hv.size(); ++r)
      if (done_[r] && std::abs(hv(r)) <= tol_) set_bit(ray.zero, r);
    rays_.push_back(std::move(ray));
  }

  void add_constraint(int r) {
    std::vector<int> pos, neg, zero;
    std::vector<double> val(rays_.size());
    for (size_t i = 0; i < rays_.size(); ++i) {
      val[i] = H_.row(r).dot(rays_[i].v);
      if (val[i] > tol_) pos.push_back(static_cast<int>(i));
      else if (val[i] < -tol_) neg.push_back(static_cast<int>(i));
      else zero.push_back(static_cast<int>(i));
    }
    std::vector<Ray> next;
    for (int i : neg) next.push_back(rays_[i]);
    for (int i : zero) {
      next.push_back(rays_[i]);
      set_bit(next.back().zero, r);
    }
    std::vector<std::uint64_t> common(words_);
    for (int p : pos) {
      for (int q : neg) {
        int cnt = 0;
        for (int w = 0; w < words_; ++w) {
          common[w] = rays_[p].zero[w] & rays_[q].zero[w];
          cnt += __builtin_popcountll(common[w]);
        }
        if (cnt < n_ - 2) continue;
        bool adjacent = true;
        for (size_t k = 0; k < rays_.size() && adjacent; ++k) {
          if (static_cast<int>(k) == p || static_cast<int>(k) == q) continue;
          bool superset = true;
          for (int w = 0; w < words_ && superset; ++w)
            superset = (rays_[k].zero[w] & common[w]) == common[w];
          if (superset) adjacent = false;
        }
        if (!adjacent) continue;
        Vector v = val[p] * rays_[q].v - val[q] * rays_[p].v;
        const double nv = v.norm();
        if (nv <= 1e-14) continue;
        Ray ray{v / nv, common};
        set_bit(ray.zero, r);
        next.push_back(std::move(ray));
      }
    }
    rays_ = std::move(next);
  }

  double tol_;
  int n_ = 0;
  int words_ = 0;
  Matrix H_;
  std::vector<bool> done_;
  std::vector<Ray> rays_;
};

}  // namespace

bool is_bounded(const Polyhedron& p) {
  ConvexSet set = make_polyhedral(p);
  for (int i = 0; i < p.dim(); ++i) {
    Vector e = Vector::Zero(p.dim());
    e(i) = 1.0;
    if (!support_function(set, e).bounded) return false;
    e(i) = -1.0;
    if (!support_function(set, e).bounded) return false;
  }
  return true;
}

VertexList enumerate_vertices(const Polyhedron& p, double tol) {
  const int d = p.dim();
  if (d > kMaxVertexDim)
    fail(ErrorCode::kDimensionCapExceeded,
         "vertex enumeration limited to dimension " + std::to_string(kMaxVertexDim));
  if (d == 0) return {Vector(0)};
  if (binomial(p.rows(), d) <= kSubsetBudget) return brute_force(p, tol);
  return enumerate_vertices_by_double_description(p);
}

VertexList enumerate_vertices_by_subsets(const Polyhedron& p, double tol) {
  return brute_force(p, tol);
}

VertexList enumerate_vertices_by_double_description(const Polyhedron& p) {
  if (!is_bounded(p)) fail(ErrorCode::kUnsupported, "vertex enumeration of an unbounded polyhedron");
  return DoubleDescription(p, 1e-9).run();
}

}  // namespace coupledro
