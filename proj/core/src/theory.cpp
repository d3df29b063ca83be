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

#include "safebo/theory.hpp"

#include <cmath>
#include <limits>

#include "safebo/acquisition.hpp"
#include "safebo/errors.hpp"
#include "safebo/grid_posterior.hpp"

namespace safebo {

namespace {
using C = EntropyConstants;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double eta(double x, double M, double noise_variance) {
  if (!(x > 0.0)) return 0.0;
  const double e = std::exp(-C::kC1 * M * M / x);
  return C::kLn2 * e * (1.0 - std::sqrt(noise_variance / (2.0 * C::kC1 * x + noise_variance)));
}

double b_function(double x, double M, double noise_variance, double phi) {
  if (!(phi > 0.0)) throw PreconditionError("b_function needs phi > 0");
  return std::min(eta(x, M, noise_variance), x / phi);
}

std::vector<double> empirical_gamma(const KernelSpec& kernel, const PointSet& grid,
                                    double noise_variance, int n_max) {
  if (!(noise_variance > 0.0)) throw ConfigError("noise variance must be positive");
  if (grid.cols() == 0) throw ConfigError("empirical gamma needs a non-empty grid");
  GridPosterior post(kernel, grid);
  std::vector<double> gamma{0.0};
  double total = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    Eigen::Index best = 0;
    post.variance().maxCoeff(&best);
    const double var = post.variance(best);
    total += 0.5 * std::log1p(var / noise_variance);
    gamma.push_back(total);
    post.observe(best, 0.0, noise_variance);
  }
  return gamma;
}

std::optional<double> invert_increasing(const std::function<double(double)>& g, double y) {
  double lo = 0.0;
  double hi = 1.0;
  while (g(hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) return std::nullopt;
  }
  while (hi - lo > 1e-10 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) >= y) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double capacity_constant_exploration(double noise_variance) {
  return C::kLn2 / (noise_variance * std::log1p(1.0 / noise_variance));
}

double capacity_constant_combined(double noise_variance, double phi, double beta) {
  if (!(phi > 2.0 * beta)) throw ConfigError("combined capacity constant needs phi > 2 beta");
  return std::max(C::kLn2 / noise_variance, 1.0 / (phi - 2.0 * beta));
}

NEpsilonResult n_epsilon(double eps, const BetaSchedule& beta, const std::vector<double>& gamma,
                         const std::function<double(double)>& g, double Cconst, int n_cap) {
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  if (gamma.empty()) throw ConfigError("empty information capacity sequence");
  for (size_t i = 1; i < gamma.size(); ++i) {
    if (gamma[i] < gamma[i - 1]) throw ConfigError("information capacity sequence is not monotone");
  }
  NEpsilonResult out;
  const int cap = std::min<int>(n_cap, static_cast<int>(gamma.size()) - 1);
  for (int n = 1; n <= cap; ++n) {
    NEpsilonRow row;
    row.n = n;
    row.gamma = gamma[static_cast<size_t>(n)];
    row.beta = beta(n);
    const double target = Cconst * row.gamma / n;
    const std::optional<double> inv = invert_increasing(g, target);
    row.condition = inv ? row.beta * *inv : kInf;
    row.satisfied = row.condition <= eps;
    row.log_crossing = std::log(g(eps / row.beta) * n / (Cconst * row.gamma));
    out.rows.push_back(row);
    if (row.satisfied && !out.n) out.n = n;
  }
  return out;
}

Eigen::Index ExpansionState::safe_count() const {
  Eigen::Index c = 0;
  for (char s : safe) c += s ? 1 : 0;
  return c;
}

ExpansionState expansion_fixed_point(const ExpansionProblem& problem, double eps, double beta,
                                     std::uint64_t seed, int max_conditionings) {
  if (!(eps > 0.0) || !(beta > 0.0)) throw ConfigError("eps and beta must be positive");
  const Eigen::Index m = problem.grid.cols();
  if (problem.seed_index < 0 || problem.seed_index >= m) throw ConfigError("seed index outside the grid");
  if (!(problem.constraint(problem.grid.col(problem.seed_index)) >= 0.0)) {
    throw ConfigError("expansion seed is not safe");
  }
  GridPosterior post(problem.kernel, problem.grid);
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(problem.noise_variance));
  std::vector<double> truth(static_cast<size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) truth[static_cast<size_t>(j)] = problem.constraint(problem.grid.col(j));

  ExpansionState st;
  st.grid = problem.grid;
  st.eps = eps;
  st.safe.assign(static_cast<size_t>(m), 0);
  st.safe[static_cast<size_t>(problem.seed_index)] = 1;
  st.history.push_back(st.safe);
  for (;;) {
    // Learn the safe set to accuracy eps.
    for (;;) {
      Eigen::Index arg = -1;
      double worst = -1.0;
      for (Eigen::Index j = 0; j < m; ++j) {
        if (st.safe[static_cast<size_t>(j)] && post.variance(j) > worst) {
          worst = post.variance(j);
          arg = j;
        }
      }
      if (beta * std::sqrt(worst) <= eps) break;
      if (st.conditionings >= max_conditionings) {
        throw ExplorationStallError("expansion exceeded the conditioning budget");
      }
      post.observe(arg, truth[static_cast<size_t>(arg)] + noise(rng), problem.noise_variance);
      ++st.conditionings;
    }
    bool grew = false;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (st.safe[static_cast<size_t>(j)]) continue;
      if (post.mean()[j] - beta * std::sqrt(post.variance(j)) >= 0.0) {
        st.safe[static_cast<size_t>(j)] = 1;
        grew = true;
      }
    }
    if (!grew) break;
    ++st.rounds;
    st.history.push_back(st.safe);
  }
  return st;
}

}  // namespace safebo
