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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "coupledro/experiments.hpp"

namespace coupledro {

namespace {

struct Job {
  int size = 0;
  double param = kNaN;
  std::uint64_t seed = 0;
};

// Which side of the bound a method's value can be trusted on.
enum class Kind { kExact, kLowerBound, kUpperBound };

Kind kind_of(Method m, const SolveResult& r) {
  if (m == Method::kScenarios) return Kind::kLowerBound;
  if (m == Method::kLdr) return Kind::kUpperBound;
  if (r.status == SolveStatus::kInexact) return Kind::kLowerBound;
  return Kind::kExact;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string clean(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

// Static value of a problem: the dual counterpart when the set is
// polyhedral, cutting planes otherwise.
double static_value(const RobustProblem& p, const SolverOptions& opts) {
  try {
    return solve_rc(p, opts).objective;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNonPolyhedralAtomInRC) throw;
  }
  return solve_cutting_plane(p, opts).objective;
}

// Marks the verdict from the sides of [lower, upper] the value supports.
void judge(ResultRow& row, Kind kind, double tol, double band_lo = kNaN, double band_hi = kNaN) {
  if (!(row.baseline > 0.0) || !std::isfinite(row.ratio)) {
    row.verdict = "n/a";
    return;
  }
  bool ok = true;
  const bool check_lo = kind != Kind::kLowerBound;
  const bool check_hi = kind != Kind::kUpperBound;
  if (check_lo && std::isfinite(row.lower)) ok = ok && row.ratio >= row.lower - tol;
  if (check_hi && std::isfinite(row.upper)) ok = ok && row.ratio <= row.upper + tol;
  if (check_lo && std::isfinite(band_lo)) ok = ok && row.ratio >= band_lo - tol;
  if (check_hi && std::isfinite(band_hi)) ok = ok && row.ratio <= band_hi + tol;
  if (check_lo && std::isfinite(row.adapt_ratio) && std::isfinite(row.adapt_bound))
    ok = ok && row.adapt_ratio >= row.adapt_bound - tol;
  row.verdict = ok ? "pass" : "fail";
}

std::vector<ResultRow> run_rhs(const ExperimentConfig& cfg, const Job& job,
                               const RhsRobustProblem& gen, bool band) {
  const RobustProblem coupled = lower(gen);
  const ShrinkageReport f = compute_rhs_factors(coupled.baseline, coupled.uncertainty);
  SolverOptions opts = cfg.solver;
  opts.seed = job.seed;
  const double z_ro = static_value(coupled.as_baseline().as_static(), opts);
  const double z_cp = static_value(coupled.as_static(), opts);
  // Static solutions are adaptive optimal under constraint-wise sets.
  const double z_aro = z_ro;

  std::vector<ResultRow> rows;
  for (Method m : cfg.methods) {
    ResultRow row;
    row.family = family_name(cfg.family);
    row.size = job.size;
    row.seed = job.seed;
    row.param = job.param;
    row.method = method_name(m);
    row.z_cp = z_cp;
    row.rho_ro = f.rho_ro;
    row.gamma_ro = f.gamma_ro;
    row.rho_aro = f.rho_aro;
    row.gamma_aro = f.gamma_aro;
    row.rho_adapt = f.rho_adapt;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const bool adaptive = is_adaptive_method(m);
      SolveResult r = solve(adaptive ? coupled : coupled.as_static(), m, opts);
      row.seconds = seconds_since(t0);
      row.status = solve_status_name(r.status);
      row.objective = r.objective;
      row.note = clean(r.note);
      const double tol = 1e-6 + (m == Method::kCuttingPlane || m == Method::kBenders ? opts.tol : 0.0);
      if (adaptive) {
        row.baseline = z_aro;
        row.ratio = r.objective / z_aro;
        row.lower = f.rho_aro;
        row.upper = f.gamma_aro;
        row.adapt_ratio = r.objective / z_cp;
        row.adapt_bound = f.rho_adapt;
        const double root = std::sqrt(static_cast<double>(job.size));
        judge(row, kind_of(m, r), tol, band ? 1.0 / root : kNaN, band ? 1.0 : kNaN);
      } else {
        row.baseline = z_ro;
        row.ratio = r.objective / z_ro;
        row.lower = f.rho_ro;
        row.upper = f.gamma_ro;
        judge(row, kind_of(m, r), tol);
      }
    } catch (const std::exception& e) {
      row.seconds = seconds_since(t0);
      row.status = "error";
      row.verdict = "error";
      row.note = clean(e.what());
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<ResultRow> run_portfolio(const ExperimentConfig& cfg, const Job& job) {
  const PortfolioInstance inst = gen_portfolio(job.size, job.seed);
  const bool further = std::isfinite(job.param) && job.param > 0.5;
  const RobustProblem coupled =
      further ? inst.problem.with_uncertainty(inst.further) : inst.problem;
  SolverOptions opts = cfg.solver;
  opts.seed = job.seed;
  const double z_ro = static_value(coupled.as_baseline(), opts);
  std::vector<ResultRow> rows;
  for (Method m : cfg.methods) {
    ResultRow row;
    row.family = family_name(cfg.family);
    row.size = job.size;
    row.seed = job.seed;
    row.param = job.param;
    row.method = method_name(m);
    row.baseline = z_ro;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      SolveResult r = solve(coupled, m, opts);
      row.seconds = seconds_since(t0);
      row.status = solve_status_name(r.status);
      row.objective = r.objective;
      row.z_cp = r.objective;
      row.ratio = r.objective / z_ro;
      // The returns are affine in u rather than linear, so no factor bound
      // applies; the rows report ratios only.
      row.verdict = "n/a";
      row.note = clean(r.note);
    } catch (const std::exception& e) {
      row.seconds = seconds_since(t0);
      row.status = "error";
      row.verdict = "error";
      row.note = clean(e.what());
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<ResultRow> run_job(const ExperimentConfig& cfg, const Job& job) {
  try {
    switch (cfg.family) {
      case ExperimentFamily::kSupplyChain: {
        SupplyChainParams sp;
        const double root = std::sqrt(static_cast<double>(job.size));
        if (cfg.sweep == "alpha") {
          sp.alpha = job.param;
          sp.gamma = root;
        } else if (cfg.sweep == "gamma") {
          sp.alpha = -1.0;
          sp.gamma = job.param;
        }
        return run_rhs(cfg, job, gen_supply_chain(job.size, job.seed, sp), false);
      }
      case ExperimentFamily::kLotSizing:
        return run_rhs(cfg, job, gen_lot_sizing(job.size, job.seed), true);
      case ExperimentFamily::kPortfolio:
        return run_portfolio(cfg, job);
    }
  } catch (const std::exception& e) {
    std::vector<ResultRow> rows;
    for (Method m : cfg.methods) {
      ResultRow row;
      row.family = family_name(cfg.family);
      row.size = job.size;
      row.seed = job.seed;
      row.param = job.param;
      row.method = method_name(m);
      row.status = "error";
      row.verdict = "error";
      row.note = clean(e.what());
      rows.push_back(row);
    }
    return rows;
  }
  return {};
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "nan") return kNaN;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') fail(ErrorCode::kParseError, "bad number '" + s + "'");
  return v;
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

constexpr const char* kHeader =
    "family,size,seed,param,method,status,objective,baseline,ratio,lower,upper,z_cp,"
    "adapt_ratio,adapt_bound,rho_ro,gamma_ro,rho_aro,gamma_aro,rho_adapt,seconds,verdict,note";
constexpr int kColumns = 22;

}  // namespace

const char* family_name(ExperimentFamily family) {
  switch (family) {
    case ExperimentFamily::kSupplyChain: return "supply_chain";
    case ExperimentFamily::kPortfolio: return "portfolio";
    case ExperimentFamily::kLotSizing: return "lot_sizing";
  }
  return "unknown";
}

ExperimentFamily parse_family(const std::string& name) {
  std::string n = name;
  std::replace(n.begin(), n.end(), '-', '_');
  for (ExperimentFamily f :
       {ExperimentFamily::kSupplyChain, ExperimentFamily::kPortfolio, ExperimentFamily::kLotSizing})
    if (n == family_name(f)) return f;
  fail(ErrorCode::kParseError, "unknown experiment family '" + name + "'");
}

BoundReport verify_problem_bounds(const RobustProblem& prob, const SolverOptions& opts,
                                  double tol) {
  if (prob.family == Family::kGeneral)
    fail(ErrorCode::kUnsupported, "bounds need a right-hand-side or coefficient problem");
  check_nesting(prob.baseline, prob.uncertainty);
  BoundReport out;
  out.factors = prob.family == Family::kRhs
                    ? compute_rhs_factors(prob.baseline, prob.uncertainty)
                    : compute_coeff_factors(prob.baseline, prob.uncertainty);
  out.z.z_ro = static_value(prob.as_baseline().as_static(), opts);
  out.z.z_cp = static_value(prob.as_static(), opts);
  double slack = 0.0;
  if (prob.adaptive && prob.n2 > 0) {
    const SolveResult aro = solve_benders(prob.as_baseline(), opts);
    const SolveResult acp = solve_benders(prob, opts);
    out.z.z_aro = aro.objective;
    out.z.z_acp = acp.objective;
    out.adaptive_status = solve_status_name(acp.status);
    slack = opts.tol;
  }
  out.verdict = bound_check(out.factors, out.z, tol + slack);
  return out;
}

std::uint64_t instance_seed(std::uint64_t seed, int size, int index) {
  return mix_seed(mix_seed(seed, static_cast<std::uint64_t>(size)), static_cast<std::uint64_t>(index));
}

bool ResultRow::operator==(const ResultRow& o) const {
  return family == o.family && size == o.size && seed == o.seed && same(param, o.param) &&
         method == o.method && status == o.status && same(objective, o.objective) &&
         same(baseline, o.baseline) && same(ratio, o.ratio) && same(lower, o.lower) &&
         same(upper, o.upper) && same(z_cp, o.z_cp) && same(adapt_ratio, o.adapt_ratio) &&
         same(adapt_bound, o.adapt_bound) && same(rho_ro, o.rho_ro) &&
         same(gamma_ro, o.gamma_ro) && same(rho_aro, o.rho_aro) && same(gamma_aro, o.gamma_aro) &&
         same(rho_adapt, o.rho_adapt) && same(seconds, o.seconds) && verdict == o.verdict &&
         note == o.note;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.methods.empty()) return {};
  if (cfg.seeds < 1) fail(ErrorCode::kMalformedProgram, "need at least one seed");
  std::vector<Job> jobs;
  const std::vector<double> params = cfg.params.empty() ? std::vector<double>{kNaN} : cfg.params;
  for (int size : cfg.sizes) {
    if (size < 2) fail(ErrorCode::kMalformedProgram, "sizes must be at least 2");
    for (double param : params)
      for (int i = 0; i < cfg.seeds; ++i) jobs.push_back({size, param, instance_seed(cfg.seed, size, i)});
  }
  std::vector<std::vector<ResultRow>> out(jobs.size());
  const int threads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(jobs.size())));
  if (threads == 1) {
    for (size_t j = 0; j < jobs.size(); ++j) out[j] = run_job(cfg, jobs[j]);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        for (size_t j = next++; j < jobs.size(); j = next++) out[j] = run_job(cfg, jobs[j]);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  std::vector<ResultRow> rows;
  for (auto& r : out) rows.insert(rows.end(), r.begin(), r.end());
  return rows;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << kHeader << '\n';
  for (const ResultRow& r : rows) {
    os << r.family << ',' << r.size << ',' << r.seed << ',' << fmt(r.param) << ',' << r.method
       << ',' << r.status << ',' << fmt(r.objective) << ',' << fmt(r.baseline) << ','
       << fmt(r.ratio) << ',' << fmt(r.lower) << ',' << fmt(r.upper) << ',' << fmt(r.z_cp)
       << ',' << fmt(r.adapt_ratio) << ',' << fmt(r.adapt_bound) << ',' << fmt(r.rho_ro) << ','
       << fmt(r.gamma_ro) << ',' << fmt(r.rho_aro) << ',' << fmt(r.gamma_aro) << ','
       << fmt(r.rho_adapt) << ',' << fmt(r.seconds) << ',' << r.verdict << ',' << clean(r.note)
       << '\n';
  }
  return os.str();
}

std::vector<ResultRow> rows_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kHeader) fail(ErrorCode::kParseError, "unexpected CSV header");
  std::vector<ResultRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.push_back("");
    if (static_cast<int>(f.size()) != kColumns) fail(ErrorCode::kParseError, "bad CSV row: " + line);
    ResultRow r;
    r.family = f[0];
    r.size = std::stoi(f[1]);
    r.seed = std::stoull(f[2]);
    r.param = parse_double(f[3]);
    r.method = f[4];
    r.status = f[5];
    r.objective = parse_double(f[6]);
    r.baseline = parse_double(f[7]);
    r.ratio = parse_double(f[8]);
    r.lower = parse_double(f[9]);
    r.upper = parse_double(f[10]);
    r.z_cp = parse_double(f[11]);
    r.adapt_ratio = parse_double(f[12]);
    r.adapt_bound = parse_double(f[13]);
    r.rho_ro = parse_double(f[14]);
    r.gamma_ro = parse_double(f[15]);
    r.rho_aro = parse_double(f[16]);
    r.gamma_aro = parse_double(f[17]);
    r.rho_adapt = parse_double(f[18]);
    r.seconds = parse_double(f[19]);
    r.verdict = f[20];
    r.note = f[21];
    rows.push_back(r);
  }
  return rows;
}

std::vector<PlotPoint> plot_data(const std::vector<ResultRow>& rows, const std::string& method,
                                 const std::string& x_axis) {
  if (x_axis != "size" && x_axis != "param")
    fail(ErrorCode::kMalformedProgram, "x axis must be size or param");
  std::map<double, std::vector<const ResultRow*>> groups;
  for (const ResultRow& r : rows) {
    if (r.method != method || !std::isfinite(r.ratio)) continue;
    groups[x_axis == "size" ? static_cast<double>(r.size) : r.param].push_back(&r);
  }
  std::vector<PlotPoint> out;
  for (const auto& [x, g] : groups) {
    PlotPoint p;
    p.x = x;
    p.count = static_cast<int>(g.size());
    double lb = 0.0, ub = 0.0;
    for (const ResultRow* r : g) {
      p.mean += r->ratio;
      lb += r->lower;
      ub += r->upper;
    }
    p.mean /= p.count;
    p.lb = lb / p.count;
    p.ub = ub / p.count;
    for (const ResultRow* r : g) p.std += (r->ratio - p.mean) * (r->ratio - p.mean);
    p.std = std::sqrt(p.std / p.count);
    out.push_back(p);
  }
  return out;
}

std::string plot_tsv(const std::vector<PlotPoint>& points) {
  std::ostringstream os;
  os << "x\tmean\tstd\tlb\tub\n";
  for (const PlotPoint& p : points)
    os << fmt(p.x) << '\t' << fmt(p.mean) << '\t' << fmt(p.std) << '\t' << fmt(p.lb) << '\t'
       << fmt(p.ub) << '\n';
  return os.str();
}

}  // namespace coupledro
