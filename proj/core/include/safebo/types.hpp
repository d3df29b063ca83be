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

#ifndef SAFEBO_TYPES_HPP_
#define SAFEBO_TYPES_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace safebo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A set of points in the parameter space, one point per column (d x m).
using PointSet = Eigen::MatrixXd;

// Axis-aligned box domain.
struct Box {
  Vector lower;
  Vector upper;

  Box() = default;
  Box(Vector lo, Vector hi);
  static Box cube(int dim, double lo, double hi);

  int dim() const { return static_cast<int>(lower.size()); }
  Vector width() const { return upper - lower; }
  Vector center() const { return 0.5 * (lower + upper); }
  bool contains(const Vector& x, double tol = 0.0) const;
  Vector clamp(const Vector& x) const;

  // Regular product grid with `resolution` nodes per axis, in lexicographic
  // order (axis 0 varies slowest).
  PointSet grid(int resolution) const;
  PointSet grid(const std::vector<int>& resolution) const;
};

// Lexicographic comparison used for deterministic tie-breaks.
bool lex_less(const Vector& a, const Vector& b);

PointSet to_point_set(const std::vector<Vector>& points);

using Rng = std::mt19937_64;

// Independent stream for (seed, stream) via a splitmix64 finalizer.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace safebo

#endif  // SAFEBO_TYPES_HPP_
