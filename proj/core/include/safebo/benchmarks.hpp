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

#ifndef SAFEBO_BENCHMARKS_HPP_
#define SAFEBO_BENCHMARKS_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "safebo/inner_opt.hpp"
#include "safebo/kernel.hpp"
#include "safebo/pendulum.hpp"
#include "safebo/types.hpp"

namespace safebo {

struct BenchmarkProblem {
  std::string name;
  Box box;
  std::function<double(const Vector&)> objective;
  std::function<double(const Vector&)> constraint;
  std::array<NoiseModel, 2> noise;  // indexed by Channel
  ExtendedKernel kernel;
  Vector seed;
  double fstar = 0.0;  // best objective value in the safe region reachable from seed
  std::string fstar_method;
  bool same_function = false;
  double default_beta = 2.0;
  SearchConfig default_search;
  // Seed actually used to draw GP sample problems (after resampling).
  std::uint64_t sample_seed = 0;

  int dim() const { return box.dim(); }
  double f(const Vector& x) const { return objective(x); }
  double s(const Vector& x) const { return constraint(x); }
};

// True when evaluating x breaks the constraint, s(x) < 0.
bool safe_violation_check(const BenchmarkProblem& problem, const Vector& x);

BenchmarkProblem synthetic_1d();
BenchmarkProblem gp_sample_problem(std::uint64_t seed, bool same_function, int resolution = 150);
BenchmarkProblem heteroskedastic_problem(int dim);
BenchmarkProblem pendulum_problem(const PendulumConfig& cfg = {});

std::vector<std::string> benchmark_names();
// `seed` only matters for GP sample problems.
BenchmarkProblem make_benchmark(const std::string& name, std::uint64_t seed = 0);

// Nodes of a product grid connected to `start` through axis neighbours
// with mask[j] != 0. Grid order follows Box::grid.
std::vector<char> flood_fill(const std::vector<char>& mask, const std::vector<int>& resolution,
                             const std::vector<Eigen::Index>& starts);

// Bilinear interpolation of values on box.grid({rx, ry}).
class BilinearGrid {
 public:
  BilinearGrid(Box box, int resolution, Vector values);
  double operator()(const Vector& x) const;
  const Vector& values() const { return values_; }
  int resolution() const { return resolution_; }
  const Box& box() const { return box_; }
  // Grid indices of the corners of the cell containing x.
  std::vector<Eigen::Index> cell_corners(const Vector& x) const;

 private:
  Box box_;
  int resolution_;
  Vector values_;
};

// r_n = fstar - best true f over evaluated points that were safe, starting
// from the value at the safe seed. Non-increasing in n.
std::vector<double> simple_regret(const std::vector<double>& f_true,
                                  const std::vector<char>& violation, double fstar,
                                  double seed_value);

}  // namespace safebo

#endif  // SAFEBO_BENCHMARKS_HPP_
