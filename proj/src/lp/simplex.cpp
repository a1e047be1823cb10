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
#include <string>
#include <vector>

#include "coupledro/lp.hpp"

namespace coupledro {

const char* lp_status_name(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

bool has_nan(const Matrix& m) { return !(m.array() == m.array()).all(); }
bool has_nan(const Vector& v) { return !(v.array() == v.array()).all(); }

void validate(const LinearProgram& lp) {
  const int n = lp.num_vars();
  auto bad = [](const std::string& msg) {
    fail(ErrorCode::kMalformedProgram, msg);
  };
  if (lp.b_ineq.size() != lp.A_ineq.rows()) bad("A_ineq/b_ineq row mismatch");
  if (lp.A_ineq.rows() > 0 && lp.A_ineq.cols() != n) bad("A_ineq column count");
  if (lp.b_eq.size() != lp.A_eq.rows()) bad("A_eq/b_eq row mismatch");
  if (lp.A_eq.rows() > 0 && lp.A_eq.cols() != n) bad("A_eq column count");
  if (lp.lower.size() != 0 && lp.lower.size() != n) bad("lower bound size");
  if (lp.upper.size() != 0 && lp.upper.size() != n) bad("upper bound size");
  if (has_nan(lp.cost) || has_nan(lp.A_ineq) || has_nan(lp.b_ineq) ||
      has_nan(lp.A_eq) || has_nan(lp.b_eq) || has_nan(lp.lower) ||
      has_nan(lp.upper)) {
    bad("NaN in program data");
  }
  if (!lp.cost.allFinite()) bad("non-finite cost");
  if (!lp.A_ineq.allFinite() || !lp.A_eq.allFinite() || !lp.b_eq.allFinite())
    bad("non-finite constraint data");
  for (int i = 0; i < lp.b_ineq.size(); ++i)
    if (lp.b_ineq(i) == -kInf) bad("ineq rhs is -inf");
  for (int j = 0; j < n; ++j) {
    double lo = lp.lower.size() ? lp.lower(j) : 0.0;
    double hi = lp.upper.size() ? lp.upper(j) : kInf;
    if (lo > hi || lo == kInf || hi == -kInf) bad("inconsistent bounds");
  }
}

// Mapping of one original variable onto nonnegative standard-form columns:
// x = offset + sign_a * s_a - s_b (s_b only for free variables).
struct VarMap {
  double offset = 0.0;
  int col_a = -1;
  double sign_a = 1.0;
  int col_b = -1;
};

enum class RowKind { kLe, kEq };

class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), n_(cols), t_(rows * (cols + 1), 0.0) {}
  double& at(int r, int c) { return t_[r * (n_ + 1) + c]; }
  double at(int r, int c) const { return t_[r * (n_ + 1) + c]; }
  double& rhs(int r) { return t_[r * (n_ + 1) + n_]; }
  double* row(int r) { return &t_[r * (n_ + 1)]; }
  int rows() const { return m_; }
  int cols() const { return n_; }

 private:
  int m_, n_;
  std::vector<double> t_;
};

class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& opt)
      : lp_(lp), opt_(opt) {}

  LpSolution run();

 private:
  void build_standard_form();
  // Returns false when unbounded (entering column stored in unbounded_col_).
  bool iterate(std::vector<double>& zrow, const std::vector<double>& cost,
               bool phase_one);
  // Rebuilds the tableau from the stored matrix and the current basis.
  // Returns false if the basis is singular or no longer primal feasible.
  bool reinvert(std::vector<double>& zrow, const std::vector<double>& cost);
  void pivot(std::vector<double>& zrow, int r, int q);
  void reset_objective_row(std::vector<double>& zrow,
                           const std::vector<double>& cost);
  Vector basis_solve_primal() const;
  Vector basis_solve_dual(const std::vector<double>& cost) const;
  Matrix basis_matrix() const;
  Vector map_to_x(const std::vector<double>& z) const;

  const LinearProgram& lp_;
  const SimplexOptions& opt_;
  int n_ = 0;
  std::vector<VarMap> vars_;
  int ns_ = 0;             // structural columns
  int ni_ = 0, nb_ = 0, ne_ = 0;
  int m_ = 0;              // rows
  int ncols_ = 0;
  Matrix M_;               // standard-form matrix, stored orientation
  Vector r_;               // rhs, stored orientation (>= 0)
  std::vector<double> sigma_;
  std::vector<RowKind> kind_;
  std::vector<int> slack_col_;
  std::vector<int> art_col_;
  std::vector<bool> is_art_;
  std::vector<bool> allowed_;
  std::vector<int> basis_;
  Tableau* tab_ = nullptr;
  int iterations_ = 0;
  int unbounded_col_ = -1;
};

void Simplex::build_standard_form() {
  n_ = lp_.num_vars();
  vars_.assign(n_, VarMap{});
  std::vector<std::pair<int, double>> bound_rows;  // (col, ub - lb)
  ns_ = 0;
  for (int j = 0; j < n_; ++j) {
    double lo = lp_.lower.size() ? lp_.lower(j) : 0.0;
    double hi = lp_.upper.size() ? lp_.upper(j) : kInf;
    VarMap& v = vars_[j];
    if (std::isfinite(lo)) {
      v.offset = lo;
      v.col_a = ns_++;
      v.sign_a = 1.0;
      if (std::isfinite(hi)) bound_rows.push_back({v.col_a, hi - lo});
    } else if (std::isfinite(hi)) {
      v.offset = hi;
      v.col_a = ns_++;
      v.sign_a = -1.0;
    } else {
      v.col_a = ns_++;
      v.col_b = ns_++;
    }
  }
  ni_ = static_cast<int>(lp_.b_ineq.size());
  nb_ = static_cast<int>(bound_rows.size());
  ne_ = static_cast<int>(lp_.b_eq.size());
  m_ = ni_ + nb_ + ne_;
  const int nslack = ni_ + nb_;

  Matrix rows = Matrix::Zero(m_, ns_);
  Vector rhs(m_);
  auto fill_row = [&](int r, const Eigen::Ref<const Eigen::RowVectorXd>& a,
                      double b) {
    double shift = 0.0;
    for (int j = 0; j < n_; ++j) {
      double aj = a(j);
      if (aj == 0.0) continue;
      const VarMap& v = vars_[j];
      shift += aj * v.offset;
      rows(r, v.col_a) += aj * v.sign_a;
      if (v.col_b >= 0) rows(r, v.col_b) -= aj;
    }
    rhs(r) = b - shift;
  };
  for (int i = 0; i < ni_; ++i) {
    if (lp_.b_ineq(i) == kInf) {
      rhs(i) = kInf;
      continue;
    }
    fill_row(i, lp_.A_ineq.row(i), lp_.b_ineq(i));
  }
  for (int k = 0; k < nb_; ++k) {
    rows(ni_ + k, bound_rows[k].first) = 1.0;
    rhs(ni_ + k) = bound_rows[k].second;
  }
  for (int i = 0; i < ne_; ++i) fill_row(ni_ + nb_ + i, lp_.A_eq.row(i), lp_.b_eq(i));

  kind_.assign(m_, RowKind::kLe);
  for (int i = 0; i < ne_; ++i) kind_[ni_ + nb_ + i] = RowKind::kEq;

  // Rows with +inf rhs are vacuous; give them a zero row and large slack.
  sigma_.assign(m_, 1.0);
  slack_col_.assign(m_, -1);
  art_col_.assign(m_, -1);
  int nart = 0;
  for (int r = 0; r < m_; ++r) {
    if (rhs(r) == kInf) {
      rows.row(r).setZero();
      rhs(r) = 0.0;
    }
    if (rhs(r) < 0.0) sigma_[r] = -1.0;
    // Equilibrate: scale each row to unit largest coefficient.
    const double amax = rows.row(r).lpNorm<Eigen::Infinity>();
    if (amax > 0.0) sigma_[r] /= amax;
    bool needs_art = kind_[r] == RowKind::kEq || sigma_[r] < 0.0;
    if (needs_art) ++nart;
  }
  ncols_ = ns_ + nslack + nart;
  M_ = Matrix::Zero(m_, ncols_);
  r_ = Vector(m_);
  is_art_.assign(ncols_, false);
  int next_slack = ns_;
  int next_art = ns_ + nslack;
  basis_.assign(m_, -1);
  for (int r = 0; r < m_; ++r) {
    M_.row(r).head(ns_) = sigma_[r] * rows.row(r);
    r_(r) = sigma_[r] * rhs(r);
    if (kind_[r] == RowKind::kLe) {
      slack_col_[r] = next_slack;
      M_(r, next_slack++) = sigma_[r];
    }
    if (kind_[r] == RowKind::kEq || sigma_[r] < 0.0) {
      art_col_[r] = next_art;
      is_art_[next_art] = true;
      M_(r, next_art++) = 1.0;
      basis_[r] = art_col_[r];
    } else {
      basis_[r] = slack_col_[r];
    }
  }
  allowed_.assign(ncols_, true);
}

void Simplex::pivot(std::vector<double>& zrow, int r, int q) {
  Tableau& T = *tab_;
  const int w = T.cols() + 1;
  double* pr = T.row(r);
  const double inv = 1.0 / pr[q];
  for (int c = 0; c < w; ++c) pr[c] *= inv;
  pr[q] = 1.0;
  for (int k = 0; k < T.rows(); ++k) {
    if (k == r) continue;
    double* rk = T.row(k);
    const double f = rk[q];
    if (f == 0.0) continue;
    for (int c = 0; c < w; ++c) rk[c] -= f * pr[c];
    rk[q] = 0.0;
  }
  const double f = zrow[q];
  if (f != 0.0) {
    for (int c = 0; c < w; ++c) zrow[c] -= f * pr[c];
    zrow[q] = 0.0;
  }
  basis_[r] = q;
  ++iterations_;
}

void Simplex::reset_objective_row(std::vector<double>& zrow,
                                  const std::vector<double>& cost) {
  Tableau& T = *tab_;
  const int w = T.cols() + 1;
  zrow.assign(w, 0.0);
  for (int c = 0; c < T.cols(); ++c) zrow[c] = cost[c];
  for (int k = 0; k < T.rows(); ++k) {
    const double cb = cost[basis_[k]];
    if (cb == 0.0) continue;
    const double* rk = T.row(k);
    for (int c = 0; c < w; ++c) zrow[c] -= cb * rk[c];
  }
}

bool Simplex::reinvert(std::vector<double>& zrow,
                       const std::vector<double>& cost) {
  if (m_ == 0) return true;
  Eigen::PartialPivLU<Matrix> lu(basis_matrix());
  if (!(lu.rcond() > 1e-13)) return false;
  Matrix full(m_, ncols_ + 1);
  full << M_, r_;
  const Matrix t = lu.solve(full);
  if (!t.allFinite()) return false;
  Tableau& T = *tab_;
  for (int k = 0; k < m_; ++k) {
    for (int c = 0; c <= ncols_; ++c) T.at(k, c) = t(k, c);
    T.at(k, basis_[k]) = 1.0;
  }
  reset_objective_row(zrow, cost);
  const double scale = 1.0 + r_.lpNorm<Eigen::Infinity>();
  return t.col(ncols_).minCoeff() >= -opt_.feasibility_tol * scale;
}

bool Simplex::iterate(std::vector<double>& zrow,
                      const std::vector<double>& cost, bool phase_one) {
  Tableau& T = *tab_;
  double cmax = 1.0;
  for (int c = 0; c < T.cols(); ++c) cmax = std::max(cmax, std::abs(zrow[c]));
  const double dtol = opt_.optimality_tol * (phase_one ? 1.0 : cmax);
  // A refactorisation costs about as much as m pivots.
  const int reinvert_every = std::max(64, m_);
  constexpr double kHarrisTol = 1e-12;
  std::vector<bool> in_basis(T.cols(), false);
  // Columns skipped until the next pivot because no usable pivot row exists.
  std::vector<bool> skipped(T.cols(), false);
  int degenerate_run = 0;
  int since_reinvert = 0;
  bool bland = false;
  // Relative pivot tolerance; tightened whenever rounding costs feasibility,
  // in which case the last basis verified feasible is restored.
  double rel_ptol = 1e-7;
  std::vector<int> good_basis = basis_;
  auto refresh = [&]() {
    since_reinvert = 0;
    std::fill(skipped.begin(), skipped.end(), false);
    if (reinvert(zrow, cost)) {
      good_basis = basis_;
      return;
    }
    if (rel_ptol >= 1e-2) fail(ErrorCode::kSolverFailure, "simplex lost feasibility");
    rel_ptol *= 100.0;
    basis_ = good_basis;
    reinvert(zrow, cost);
    bland = false;
    degenerate_run = 0;
  };
  while (true) {
    if (iterations_ >= opt_.max_iterations)
      fail(ErrorCode::kSolverFailure, "simplex iteration limit reached");
    if (since_reinvert >= reinvert_every) refresh();
    std::fill(in_basis.begin(), in_basis.end(), false);
    for (int b : basis_) in_basis[b] = true;
    // Once stalling is detected Bland's rule stays on for the phase.
    bland = bland || degenerate_run >= opt_.degenerate_switch;
    int q = -1;
    double best = -dtol;
    for (int c = 0; c < T.cols(); ++c) {
      if (!allowed_[c] || in_basis[c] || skipped[c]) continue;
      if (zrow[c] < best) {
        q = c;
        if (bland) break;
        best = zrow[c];
      }
    }
    if (q < 0) {
      // Confirm optimality on a freshly factored tableau.
      if (since_reinvert == 0) return true;
      refresh();
      continue;
    }
    // Harris ratio test: bound the step with slightly relaxed rows, then
    // take the largest pivot among rows within that bound. The relaxation
    // stays far below feasibility_tol so callers adding cuts see them hold.
    // Pivots below a relative tolerance are avoided when possible.
    double col_max = 0.0;
    for (int k = 0; k < T.rows(); ++k) col_max = std::max(col_max, std::abs(T.at(k, q)));
    double ptol = std::max(opt_.pivot_tol, rel_ptol * col_max);
    double bound = kInf;
    for (int attempt = 0; attempt < 2 && bound == kInf; ++attempt) {
      if (attempt == 1) ptol = opt_.pivot_tol;
      for (int k = 0; k < T.rows(); ++k) {
        const double a = T.at(k, q);
        if (a <= ptol) continue;
        bound = std::min(bound, (std::max(0.0, T.rhs(k)) + kHarrisTol) / a);
      }
    }
    if (bound == kInf) {
      if (since_reinvert > 0) {
        refresh();
        continue;
      }
      // The phase-one objective is bounded, so a ray there is rounding noise.
      if (phase_one) {
        skipped[q] = true;
        continue;
      }
      unbounded_col_ = q;
      return false;
    }
    // Under Bland's rule the smallest basic index wins among the candidate
    // rows whose pivot is within a factor 100 of the largest.
    double a_max = 0.0;
    for (int k = 0; k < T.rows(); ++k) {
      const double a = T.at(k, q);
      if (a > ptol && std::max(0.0, T.rhs(k)) / a <= bound) a_max = std::max(a_max, a);
    }
    int r = -1;
    double best_ratio = kInf;
    for (int k = 0; k < T.rows(); ++k) {
      const double a = T.at(k, q);
      if (a <= ptol || (bland && a < 1e-2 * a_max)) continue;
      const double ratio = std::max(0.0, T.rhs(k)) / a;
      if (ratio > bound) continue;
      const bool better =
          r < 0 || (bland ? basis_[k] < basis_[r] : a > T.at(r, q));
      if (better) {
        r = k;
        best_ratio = ratio;
      }
    }
    degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
    pivot(zrow, r, q);
    ++since_reinvert;
    std::fill(skipped.begin(), skipped.end(), false);
  }
}

Matrix Simplex::basis_matrix() const {
  Matrix B(m_, m_);
  for (int k = 0; k < m_; ++k) B.col(k) = M_.col(basis_[k]);
  return B;
}

Vector Simplex::basis_solve_primal() const {
  Vector z = Vector::Zero(ncols_);
  if (m_ == 0) return z;
  Vector xb = basis_matrix().partialPivLu().solve(r_);
  for (int k = 0; k < m_; ++k) z(basis_[k]) = xb(k);
  return z;
}

Vector Simplex::basis_solve_dual(const std::vector<double>& cost) const {
  if (m_ == 0) return Vector();
  Vector cb(m_);
  for (int k = 0; k < m_; ++k) cb(k) = cost[basis_[k]];
  return basis_matrix().transpose().partialPivLu().solve(cb);
}

Vector Simplex::map_to_x(const std::vector<double>& z) const {
  Vector x(n_);
  for (int j = 0; j < n_; ++j) {
    const VarMap& v = vars_[j];
    x(j) = v.sign_a * z[v.col_a];
    if (v.col_b >= 0) x(j) -= z[v.col_b];
  }
  return x;
}

LpSolution Simplex::run() {
  build_standard_form();
  LpSolution sol;
  Tableau T(m_, ncols_);
  tab_ = &T;
  for (int r = 0; r < m_; ++r) {
    for (int c = 0; c < ncols_; ++c) T.at(r, c) = M_(r, c);
    T.rhs(r) = r_(r);
  }

  std::vector<double> zrow;
  bool any_art = false;
  for (bool a : is_art_) any_art = any_art || a;
  if (any_art) {
    std::vector<double> c1(ncols_, 0.0);
    for (int c = 0; c < ncols_; ++c)
      if (is_art_[c]) c1[c] = 1.0;
    reset_objective_row(zrow, c1);
    iterate(zrow, c1, /*phase_one=*/true);
    double infeas = 0.0;
    for (int k = 0; k < m_; ++k)
      if (is_art_[basis_[k]]) infeas += std::max(0.0, T.rhs(k));
    const double scale = std::max(1.0, r_.size() ? r_.lpNorm<Eigen::Infinity>() : 0.0);
    if (infeas > opt_.feasibility_tol * scale) {
      Vector y = basis_solve_dual(c1);
      sol.status = LpStatus::kInfeasible;
      sol.farkas_ineq = Vector::Zero(ni_);
      sol.farkas_eq = Vector::Zero(ne_);
      for (int i = 0; i < ni_; ++i) sol.farkas_ineq(i) = std::max(0.0, -sigma_[i] * y(i));
      for (int i = 0; i < ne_; ++i) {
        int r = ni_ + nb_ + i;
        sol.farkas_eq(i) = -sigma_[r] * y(r);
      }
      sol.iterations = iterations_;
      return sol;
    }
    // Drive zero-level artificials out of the basis.
    for (int k = 0; k < m_; ++k) {
      if (!is_art_[basis_[k]]) continue;
      int best = -1;
      double best_abs = opt_.pivot_tol;
      for (int c = 0; c < ncols_; ++c) {
        if (is_art_[c]) continue;
        if (std::abs(T.at(k, c)) > best_abs) {
          best_abs = std::abs(T.at(k, c));
          best = c;
        }
      }
      if (best >= 0) pivot(zrow, k, best);
    }
    for (int c = 0; c < ncols_; ++c)
      if (is_art_[c]) allowed_[c] = false;
  }

  const bool maximize = lp_.sense == Sense::kMaximize;
  std::vector<double> c2(ncols_, 0.0);
  for (int j = 0; j < n_; ++j) {
    const double cj = maximize ? -lp_.cost(j) : lp_.cost(j);
    const VarMap& v = vars_[j];
    c2[v.col_a] += cj * v.sign_a;
    if (v.col_b >= 0) c2[v.col_b] -= cj;
  }
  reset_objective_row(zrow, c2);
  const bool bounded = iterate(zrow, c2, /*phase_one=*/false);
  sol.iterations = iterations_;
  if (!bounded) {
    std::vector<double> dz(ncols_, 0.0);
    dz[unbounded_col_] = 1.0;
    for (int k = 0; k < m_; ++k) dz[basis_[k]] = -T.at(k, unbounded_col_);
    sol.status = LpStatus::kUnbounded;
    sol.ray = map_to_x(dz);
    std::vector<double> z(ncols_, 0.0);
    for (int k = 0; k < m_; ++k) z[basis_[k]] = std::max(0.0, T.rhs(k));
    Vector x = map_to_x(z);
    for (int j = 0; j < n_; ++j) x(j) += vars_[j].offset;
    sol.primal = x;
    return sol;
  }

  // Recompute the vertex and multipliers from the final basis.
  Vector z = basis_solve_primal();
  std::vector<double> zv(ncols_);
  for (int c = 0; c < ncols_; ++c) zv[c] = std::max(0.0, z(c));
  Vector x = map_to_x(zv);
  for (int j = 0; j < n_; ++j) {
    x(j) += vars_[j].offset;
    double lo = lp_.lower.size() ? lp_.lower(j) : 0.0;
    double hi = lp_.upper.size() ? lp_.upper(j) : kInf;
    x(j) = std::clamp(x(j), lo, hi);
  }
  Vector y = basis_solve_dual(c2);
  sol.status = LpStatus::kOptimal;
  sol.primal = x;
  sol.objective = lp_.cost.dot(x);
  sol.ineq_dual = Vector::Zero(ni_);
  sol.eq_dual = Vector::Zero(ne_);
  for (int i = 0; i < ni_; ++i) sol.ineq_dual(i) = std::max(0.0, -sigma_[i] * y(i));
  for (int i = 0; i < ne_; ++i) {
    const int r = ni_ + nb_ + i;
    sol.eq_dual(i) = -sigma_[r] * y(r);
  }
  Vector cmin = maximize ? Vector(-lp_.cost) : lp_.cost;
  sol.reduced_cost = cmin;
  if (ni_ > 0) sol.reduced_cost += lp_.A_ineq.transpose() * sol.ineq_dual;
  if (ne_ > 0) sol.reduced_cost += lp_.A_eq.transpose() * sol.eq_dual;
  return sol;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  validate(lp);
  Simplex s(lp, options);
  return s.run();
}

double dual_objective(const LinearProgram& lp, const LpSolution& sol) {
  // Minimization form: max -b'lambda - beq'mu + sum_j min_{l<=x<=u} r_j x_j.
  double v = 0.0;
  for (int i = 0; i < lp.b_ineq.size(); ++i)
    if (sol.ineq_dual(i) != 0.0) v -= lp.b_ineq(i) * sol.ineq_dual(i);
  if (lp.b_eq.size()) v -= lp.b_eq.dot(sol.eq_dual);
  for (int j = 0; j < lp.num_vars(); ++j) {
    double r = sol.reduced_cost(j);
    if (std::abs(r) <= 1e-9 * (1.0 + std::abs(lp.cost(j)))) r = 0.0;
    const double lo = lp.lower.size() ? lp.lower(j) : 0.0;
    const double hi = lp.upper.size() ? lp.upper(j) : kInf;
    if (r > 0) v += r * lo;
    else if (r < 0) v += r * hi;
  }
  return v;
}

double primal_infeasibility(const LinearProgram& lp, const Vector& x) {
  double worst = 0.0;
  if (lp.A_ineq.rows() > 0) {
    Vector ax = lp.A_ineq * x;
    for (int i = 0; i < ax.size(); ++i)
      worst = std::max(worst, ax(i) - lp.b_ineq(i));
  }
  if (lp.A_eq.rows() > 0) {
    Vector ex = lp.A_eq * x - lp.b_eq;
    worst = std::max(worst, ex.lpNorm<Eigen::Infinity>());
  }
  for (int j = 0; j < lp.num_vars(); ++j) {
    const double lo = lp.lower.size() ? lp.lower(j) : 0.0;
    const double hi = lp.upper.size() ? lp.upper(j) : kInf;
    worst = std::max({worst, lo - x(j), x(j) - hi});
  }
  return worst;
}

}  // namespace coupledro
