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

#ifndef SAFEBO_INNER_OPT_HPP_
#define SAFEBO_INNER_OPT_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "safebo/types.hpp"

namespace safebo {

enum class SearchMode { kGrid, kMultistart, kLine };

std::string to_string(SearchMode mode);
SearchMode search_mode_from_string(const std::string& name);

struct SearchConfig {
  SearchMode mode = SearchMode::kGrid;
  // Nodes per axis for grid mode; empty selects a default by dimension.
  std::vector<int> resolution;
  // Bisection steps towards infeasible neighbours when building x probes.
  int refine_steps = 5;
  int multistart_count = 8;
  double initial_step = 0.25;  // fraction of the box width
  double shrink = 0.5;
  double tolerance = 1e-5;     // fraction of the box width
  int max_evals = 4000;
  int line_resolution = 201;
  int chunk = 128;

  static SearchConfig defaults_for(int dim);
  std::vector<int> grid_resolution(int dim) const;
  void validate() const;
};

// Batched objectives: a joint objective returns |xs| x |zs| values.
using JointObjective = std::function<Matrix(const PointSet& xs, const PointSet& zs)>;
using SingleObjective = std::function<Vector(const PointSet& xs)>;
using Feasibility = std::function<std::vector<char>(const PointSet& xs)>;
// Optional per-x upper bound on max_z of the joint objective; enables
// exact pruning in exhaustive scans.
using UpperBound = std::function<Vector(const PointSet& xs)>;

struct SearchProblem {
  Box box;
  Feasibility feasible;
  // Known feasible points (certified archive); seed probes and restarts.
  std::vector<Vector> anchors;
  // Current best safe point; line mode draws its line through it.
  Vector incumbent;
};

struct JointResult {
  Vector x;
  Vector z;
  double value = 0.0;
  long evaluations = 0;
  // Line mode only: the sampled direction.
  Vector direction;
  // Target probes scanned by the exhaustive stage.
  PointSet targets;
};

struct SingleResult {
  Vector x;
  double value = 0.0;
  long evaluations = 0;
  Vector direction;
};

JointResult maximize_joint(const JointObjective& objective, const SearchProblem& problem,
                           const SearchConfig& cfg, std::uint64_t seed,
                           const UpperBound& upper_bound = nullptr);

SingleResult maximize_single(const SingleObjective& objective, const SearchProblem& problem,
                             const SearchConfig& cfg, std::uint64_t seed);

// Feasible grid nodes, anchors, and points found by bisecting from every
// feasible point towards each infeasible axis neighbour at grid spacing.
PointSet feasible_probes(const Box& box, const std::vector<int>& resolution,
                         const Feasibility& feasible, const std::vector<Vector>& anchors,
                         int refine_steps);

// Exhaustive maximization over xs x zs with deterministic lexicographic
// tie-break. Rows whose upper bound is below the running best are skipped.
JointResult exhaustive_joint(const JointObjective& objective, const PointSet& xs,
                             const PointSet& zs, int chunk, const UpperBound& upper_bound = nullptr);

// True if (a_value, a_point) beats (b_value, b_point): larger value, then
// lexicographically smaller point.
bool better(double a_value, const Vector& a_point, double b_value, const Vector& b_point);

// Random unit direction for line mode.
Vector random_direction(int dim, std::uint64_t seed);

// Segment {origin + t u : t in [tmin, tmax]} of a random line through the
// incumbent (or the first anchor), clipped to the box.
struct LineSegment {
  Vector origin;
  Vector direction;
  double tmin = 0.0;
  double tmax = 0.0;

  PointSet map(const PointSet& t) const;
  Box parameter_box() const;
};

LineSegment random_line(const SearchProblem& problem, std::uint64_t seed);

}  // namespace safebo

#endif  // SAFEBO_INNER_OPT_HPP_
