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

#ifndef SAFEBO_GRID_POSTERIOR_HPP_
#define SAFEBO_GRID_POSTERIOR_HPP_

#include <algorithm>

#include "safebo/kernel.hpp"
#include "safebo/types.hpp"

namespace safebo {

// Exact single-channel GP posterior restricted to a finite grid, kept as a
// dense mean vector and covariance matrix with rank-one updates. Suited to
// many repeated observations at grid nodes.
class GridPosterior {
 public:
  GridPosterior(const KernelSpec& kernel, PointSet grid);

  void observe(Eigen::Index node, double y, double noise_variance);

  Eigen::Index size() const { return grid_.cols(); }
  const PointSet& grid() const { return grid_; }
  const Vector& mean() const { return mean_; }
  const Matrix& covariance() const { return cov_; }
  double variance(Eigen::Index node) const { return std::max(cov_(node, node), 0.0); }
  Vector variance() const { return cov_.diagonal().cwiseMax(0.0); }
  int observations() const { return observations_; }

 private:
  PointSet grid_;
  Vector mean_;
  Matrix cov_;
  int observations_ = 0;
};

}  // namespace safebo

#endif  // SAFEBO_GRID_POSTERIOR_HPP_
