// Copyright 2026 The safebo Authors.
//
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

#include "safebo/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>

#include "safebo/errors.hpp"
#include "safebo/prior_sampling.hpp"

namespace safebo {

namespace {

// Golden-section refinement of a unimodal bracket [a, b].
double golden_max(const std::function<double(double)>& g, double a, double b) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - r * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + r * (b - a);
      gd = g(d);
    }
  }
  return std::max(gc, gd);
}

// Dense scan of g on [lo, hi] restricted to the connected run of g_safe >= 0
// containing `start`, refined by golden section around the best node.
double scan_1d(const std::function<double(double)>& g, const std::function<double(double)>& safe,
               double lo, double hi, double start, int nodes) {
  std::vector<double> xs(static_cast<size_t>(nodes));
  std::vector<char> ok(static_cast<size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    xs[static_cast<size_t>(i)] = lo + (hi - lo) * i / (nodes - 1);
    ok[static_cast<size_t>(i)] = safe(xs[static_cast<size_t>(i)]) >= 0.0;
  }
  auto s0 = static_cast<Eigen::Index>(std::lround((start - lo) / (hi - lo) * (nodes - 1)));
  const std::vector<char> reach = flood_fill(ok, {nodes}, {s0});
  double best = -INFINITY;
  int arg = -1;
  for (int i = 0; i < nodes; ++i) {
    if (!reach[static_cast<size_t>(i)]) continue;
    const double v = g(xs[static_cast<size_t>(i)]);
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  const double step = (hi - lo) / (nodes - 1);
  const double a = std::max(lo, xs[static_cast<size_t>(arg)] - step);
  const double b = std::min(hi, xs[static_cast<size_t>(arg)] + step);
  return std::max(best, golden_max(g, a, b));
}

void check_seed(const BenchmarkProblem& p) {
  if (!(p.s(p.seed) >= 0.0)) throw ConfigError("benchmark '" + p.name + "' has an unsafe seed");
}

}  // namespace

bool safe_violation_check(const BenchmarkProblem& problem, const Vector& x) {
  return problem.s(x) < 0.0;
}

std::vector<char> flood_fill(const std::vector<char>& mask, const std::vector<int>& resolution,
                             const std::vector<Eigen::Index>& starts) {
  const int d = static_cast<int>(resolution.size());
  std::vector<Eigen::Index> stride(static_cast<size_t>(d), 1);
  for (int k = d - 2; k >= 0; --k) stride[static_cast<size_t>(k)] = stride[static_cast<size_t>(k + 1)] * resolution[static_cast<size_t>(k + 1)];
  std::vector<char> seen(mask.size(), 0);
  std::deque<Eigen::Index> queue;
  for (Eigen::Index s : starts) {
    if (s >= 0 && s < static_cast<Eigen::Index>(mask.size()) && mask[static_cast<size_t>(s)] &&
        !seen[static_cast<size_t>(s)]) {
      seen[static_cast<size_t>(s)] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const Eigen::Index j = queue.front();
    queue.pop_front();
    for (int k = 0; k < d; ++k) {
      const Eigen::Index coord = (j / stride[static_cast<size_t>(k)]) % resolution[static_cast<size_t>(k)];
      for (int sign : {-1, 1}) {
        const Eigen::Index c = coord + sign;
        if (c < 0 || c >= resolution[static_cast<size_t>(k)]) continue;
        const Eigen::Index nb = j + sign * stride[static_cast<size_t>(k)];
        if (mask[static_cast<size_t>(nb)] && !seen[static_cast<size_t>(nb)]) {
          seen[static_cast<size_t>(nb)] = 1;
          queue.push_back(nb);
        }
      }
    }
  }
  return seen;
}

BilinearGrid::BilinearGrid(Box box, int resolution, Vector values)
    : box_(std::move(box)), resolution_(resolution), values_(std::move(values)) {
  if (box_.dim() != 2) throw ConfigError("bilinear grid is two dimensional");
  if (values_.size() != static_cast<Eigen::Index>(resolution) * resolution) {
    throw ConfigError("bilinear grid value count mismatch");
  }
}

namespace {

void cell_of(const Box& box, int res, double v, int k, int& i, double& frac) {
  const double u = (v - box.lower[k]) / (box.upper[k] - box.lower[k]) * (res - 1);
  const double uc = std::clamp(u, 0.0, static_cast<double>(res - 1));
  i = std::min(static_cast<int>(std::floor(uc)), res - 2);
  frac = uc - i;
}

}  // namespace

double BilinearGrid::operator()(const Vector& x) const {
  int i = 0, j = 0;
  double fx = 0.0, fy = 0.0;
  cell_of(box_, resolution_, x[0], 0, i, fx);
  cell_of(box_, resolution_, x[1], 1, j, fy);
  auto at = [&](int a, int b) { return values_[static_cast<Eigen::Index>(a) * resolution_ + b]; };
  return (1 - fx) * (1 - fy) * at(i, j) + fx * (1 - fy) * at(i + 1, j) +
         (1 - fx) * fy * at(i, j + 1) + fx * fy * at(i + 1, j + 1);
}

std::vector<Eigen::Index> BilinearGrid::cell_corners(const Vector& x) const {
  int i = 0, j = 0;
  double fx = 0.0, fy = 0.0;
  cell_of(box_, resolution_, x[0], 0, i, fx);
  cell_of(box_, resolution_, x[1], 1, j, fy);
  const auto r = static_cast<Eigen::Index>(resolution_);
  return {i * r + j, (i + 1) * r + j, i * r + j + 1, (i + 1) * r + j + 1};
}

BenchmarkProblem synthetic_1d() {
  BenchmarkProblem p;
  p.name = "synthetic1d";
  p.box = Box(Vector::Constant(1, -2.4), Vector::Constant(1, 10.5));
  auto f = [](const Vector& x) {
    const double v = x[0];
    return std::exp(-v) + 15.0 * std::exp(-(v - 4.0) * (v - 4.0)) +
           3.0 * std::exp(-(v - 7.0) * (v - 7.0)) + 18.0 * std::exp(-(v - 10.0) * (v - 10.0)) + 0.41;
  };
  p.objective = f;
  p.constraint = f;
  p.same_function = true;
  p.noise = {NoiseModel::homoskedastic(0.05), NoiseModel::homoskedastic(0.05)};
  p.kernel = ExtendedKernel::shared(KernelSpec::rbf(1, 0.6, 50.0));
  p.seed = Vector::Zero(1);
  auto g = [&](double t) { return f(Vector::Constant(1, t)); };
  p.fstar = scan_1d(g, g, -2.4, 10.5, 0.0, 100001);
  p.fstar_method = "dense 1-D scan of the safe interval containing the seed, golden-section refined";
  p.default_beta = 2.0;
  p.default_search = SearchConfig::defaults_for(1);
  check_seed(p);
  return p;
}

BenchmarkProblem gp_sample_problem(std::uint64_t seed, bool same_function, int resolution) {
  const Box box = Box::cube(2, -1.0, 1.0);
  const KernelSpec k = KernelSpec::rbf(2, 0.3, 30.0);
  const Vector origin = Vector::Zero(2);
  std::uint64_t used = seed;
  std::shared_ptr<BilinearGrid> fgrid;
  std::shared_ptr<BilinearGrid> sgrid;
  for (int attempt = 0;; ++attempt, ++used) {
    if (attempt > 1000) throw ConfigError("no GP sample with a safe origin found");
    Vector sv = sample_prior_on_product_grid(k, box, resolution, derive_seed(used, 1));
    sgrid = std::make_shared<BilinearGrid>(box, resolution, std::move(sv));
    if ((*sgrid)(origin) < 0.0) continue;
    fgrid = same_function ? sgrid
                          : std::make_shared<BilinearGrid>(
                                box, resolution,
                                sample_prior_on_product_grid(k, box, resolution, derive_seed(used, 2)));
    break;
  }
  BenchmarkProblem p;
  p.name = same_function ? "gp2d_same" : "gp2d_indep";
  p.box = box;
  p.objective = [fgrid](const Vector& x) { return (*fgrid)(x); };
  p.constraint = [sgrid](const Vector& x) { return (*sgrid)(x); };
  p.same_function = same_function;
  p.noise = {NoiseModel::homoskedastic(0.05), NoiseModel::homoskedastic(0.05)};
  p.kernel = ExtendedKernel::shared(k);
  p.seed = origin;
  p.sample_seed = used;

  std::vector<char> safe(static_cast<size_t>(sgrid->values().size()));
  for (Eigen::Index j = 0; j < sgrid->values().size(); ++j) safe[static_cast<size_t>(j)] = sgrid->values()[j] >= 0.0;
  const std::vector<char> reach = flood_fill(safe, {resolution, resolution}, sgrid->cell_corners(origin));
  double best = p.f(origin);
  for (size_t j = 0; j < reach.size(); ++j) {
    if (reach[j]) best = std::max(best, fgrid->values()[static_cast<Eigen::Index>(j)]);
  }
  p.fstar = best;
  p.fstar_method = "flood fill of safe grid nodes from the seed cell, max objective on the fill";
  p.default_beta = 3.0;
  p.default_search = SearchConfig::defaults_for(2);
  check_seed(p);
  return p;
}

BenchmarkProblem heteroskedastic_problem(int dim) {
  if (dim != 4 && dim != 6) throw ConfigError("heteroskedastic problem is defined for d = 4 or 6");
  BenchmarkProblem p;
  p.name = "hetero" + std::to_string(dim);
  p.box = Box::cube(dim, -7.0, 7.0);
  auto f = [](const Vector& x) {
    auto bump = [&](double c) {
      Vector y = x;
      y[0] -= c;
      return std::exp(-y.squaredNorm());
    };
    return 0.5 * std::exp(-x.squaredNorm()) + bump(2.7) + bump(-2.7) + 3.0 * bump(6.0) +
           3.0 * bump(-6.0) + 0.2;
  };
  p.objective = f;
  p.constraint = f;
  p.same_function = true;
  const auto noise = NoiseModel::heteroskedastic([](const Vector& x) { return x[0] >= 0.0 ? 0.05 : 0.5; });
  p.noise = {noise, noise};
  p.kernel = ExtendedKernel::shared(KernelSpec::rbf(dim, 1.6, 1.0));
  p.seed = Vector::Zero(dim);
  // The maximum lies on the first axis by symmetry of every bump.
  auto g = [&](double t) {
    Vector x = Vector::Zero(dim);
    x[0] = t;
    return f(x);
  };
  p.fstar = scan_1d(g, g, -7.0, 7.0, 0.0, 100001);
  p.fstar_method = "scan along the first axis (maximizer lies on it), golden-section refined";
  p.default_beta = 2.0;
  p.default_search = SearchConfig::defaults_for(dim);
  check_seed(p);
  return p;
}

BenchmarkProblem pendulum_problem(const PendulumConfig& cfg) {
  BenchmarkProblem p;
  p.name = "pendulum";
  p.box = Box((Vector(2) << -10.0, -5.0).finished(), (Vector(2) << 0.0, 1.0).finished());
  auto s = [cfg](const Vector& x) {
    return 0.5 - simulate_pendulum(x[0], x[1], cfg).max_abs_theta_dot;
  };
  p.objective = s;
  p.constraint = s;
  p.same_function = true;
  p.noise = {NoiseModel::homoskedastic(0.04), NoiseModel::homoskedastic(0.04)};
  p.kernel = ExtendedKernel::shared(KernelSpec::rbf(2, 1.3, 6.6));
  p.seed = (Vector(2) << -7.0, -2.0).finished();
  const int res = 101;
  const PointSet grid = p.box.grid(res);
  std::vector<char> safe(static_cast<size_t>(grid.cols()));
  for (Eigen::Index j = 0; j < grid.cols(); ++j) safe[static_cast<size_t>(j)] = s(grid.col(j)) >= 0.0;
  Eigen::Index nearest = 0;
  (grid.colwise() - p.seed).colwise().squaredNorm().minCoeff(&nearest);
  const std::vector<char> reach = flood_fill(safe, {res, res}, {nearest});
  double best = s(p.seed);
  for (Eigen::Index j = 0; j < grid.cols(); ++j) {
    if (reach[static_cast<size_t>(j)]) best = std::max(best, s(grid.col(j)));
  }
  p.fstar = best;
  p.fstar_method = "flood fill of a 101 x 101 gain grid from the seed";
  p.default_beta = 3.0;
  p.default_search = SearchConfig::defaults_for(2);
  check_seed(p);
  return p;
}

std::vector<std::string> benchmark_names() {
  return {"synthetic1d", "gp2d_same", "gp2d_indep", "hetero4", "hetero6", "pendulum"};
}

BenchmarkProblem make_benchmark(const std::string& name, std::uint64_t seed) {
  if (name == "synthetic1d") return synthetic_1d();
  if (name == "gp2d_same") return gp_sample_problem(seed, true);
  if (name == "gp2d_indep") return gp_sample_problem(seed, false);
  if (name == "hetero4") return heteroskedastic_problem(4);
  if (name == "hetero6") return heteroskedastic_problem(6);
  if (name == "pendulum") return pendulum_problem();
  throw ConfigError("unknown benchmark '" + name + "'");
}

std::vector<double> simple_regret(const std::vector<double>& f_true,
                                  const std::vector<char>& violation, double fstar,
                                  double seed_value) {
  if (f_true.size() != violation.size()) throw PreconditionError("regret inputs differ in length");
  std::vector<double> out;
  out.reserve(f_true.size());
  double best = seed_value;
  for (size_t i = 0; i < f_true.size(); ++i) {
    if (!violation[i]) best = std::max(best, f_true[i]);
    out.push_back(fstar - best);
  }
  return out;
}

}  // namespace safebo
