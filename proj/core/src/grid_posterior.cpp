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

#include "safebo/grid_posterior.hpp"

#include "safebo/errors.hpp"

namespace safebo {

GridPosterior::GridPosterior(const KernelSpec& kernel, PointSet grid)
    : grid_(std::move(grid)) {
  kernel.validate();
  cov_ = kernel.gram(grid_, grid_);
  mean_ = Vector::Zero(grid_.cols());
}

void GridPosterior::observe(Eigen::Index node, double y, double noise_variance) {
  if (node < 0 || node >= size()) throw PreconditionError("grid node out of range");
  if (!(noise_variance > 0.0)) throw PreconditionError("noise variance must be positive");
  const Vector c = cov_.col(node);
  const double denom = c[node] + noise_variance;
  mean_ += c * ((y - mean_[node]) / denom);
  cov_.noalias() -= (c / denom) * c.transpose();
  ++observations_;
}

}  // namespace safebo
