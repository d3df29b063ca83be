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

#ifndef SAFEBO_THEORY_HPP_
#define SAFEBO_THEORY_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "safebo/kernel.hpp"
#include "safebo/safe_set.hpp"
#include "safebo/types.hpp"

namespace safebo {

// eta(x) = ln2 exp(-c1 M^2 / x) (1 - sqrt(noise / (2 c1 x + noise))).
double eta(double x, double M, double noise_variance);
// b(x) = min(eta(x), x / phi).
double b_function(double x, double M, double noise_variance, double phi);

// Default mean bound M = 2 beta.
inline double default_mean_bound(double beta) { return 2.0 * beta; }

// Greedy lower estimate of the information capacity on a finite grid:
// gamma[N] for N = 0..n_max, gamma[0] = 0.
std::vector<double> empirical_gamma(const KernelSpec& kernel, const PointSet& grid,
                                    double noise_variance, int n_max);

// Smallest x with g(x) >= y for increasing g, by bisection to 1e-10
// relative width. Empty when y is not below sup g (probed up to x = 1e12).
std::optional<double> invert_increasing(const std::function<double(double)>& g, double y);

// Capacity constants for the two iteration bounds.
double capacity_constant_exploration(double noise_variance);
double capacity_constant_combined(double noise_variance, double phi, double beta);

struct NEpsilonRow {
  int n = 0;
  double gamma = 0.0;
  double beta = 0.0;
  // beta_N * g^-1(C gamma_N / N); +inf when the target is unreachable.
  double condition = 0.0;
  // ln(g(eps / beta_N) N / (C gamma_N)); >= 0 exactly when the condition holds.
  double log_crossing = 0.0;
  bool satisfied = false;
};

struct NEpsilonResult {
  std::optional<int> n;
  std::vector<NEpsilonRow> rows;
};

// Smallest N <= n_cap with beta_N g^-1(C gamma_N / N) <= eps.
NEpsilonResult n_epsilon(double eps, const BetaSchedule& beta, const std::vector<double>& gamma,
                         const std::function<double(double)>& g, double C, int n_cap);

struct ExpansionState {
  PointSet grid;
  std::vector<char> safe;
  double eps = 0.0;
  int rounds = 0;
  int conditionings = 0;
  // Safe subset after each round, starting with {x0}.
  std::vector<std::vector<char>> history;

  Eigen::Index safe_count() const;
};

struct ExpansionProblem {
  KernelSpec kernel;
  PointSet grid;
  std::function<double(const Vector&)> constraint;
  Eigen::Index seed_index = 0;
  double noise_variance = 0.05;
};

// Per-GP expansion: observe the constraint at the most uncertain safe node
// until beta * sigma <= eps on the safe set, add every node whose lower
// bound is >= 0, and repeat until the set stops growing.
ExpansionState expansion_fixed_point(const ExpansionProblem& problem, double eps, double beta,
                                     std::uint64_t seed, int max_conditionings = 10000);

}  // namespace safebo

#endif  // SAFEBO_THEORY_HPP_
