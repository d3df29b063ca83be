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

#ifndef SAFEBO_GP_HPP_
#define SAFEBO_GP_HPP_

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "safebo/kernel.hpp"
#include "safebo/types.hpp"

namespace safebo {

struct Observation {
  ExtendedPoint point;
  double y = 0.0;
  double noise_variance = 0.0;
};

using Dataset = std::vector<Observation>;

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;
};

// Posterior marginals at a batch of points on one channel, plus the solved
// factor W = L^-1 K(data, points) so cross covariances can be formed later.
struct ProbeCache {
  Channel channel = Channel::kConstraint;
  PointSet points;
  Vector mean;
  Vector variance;
  Matrix solved;
  int block = 0;

  Eigen::Index size() const { return points.cols(); }
  Vector stddev() const { return variance.array().sqrt(); }
};

// Zero-mean GP posterior over the extended domain. Immutable: `condition`
// returns a new posterior and shares untouched state with the old one.
class GaussianPosterior {
 public:
  GaussianPosterior(ExtendedKernel kernel, std::array<NoiseModel, 2> noise);
  GaussianPosterior(ExtendedKernel kernel, NoiseModel noise)
      : GaussianPosterior(std::move(kernel), {noise, noise}) {}

  // Full refactorization of the Gram matrix from scratch.
  static GaussianPosterior from_dataset(ExtendedKernel kernel, std::array<NoiseModel, 2> noise,
                                        const Dataset& data);

  GaussianPosterior condition(const Observation& obs) const;
  // Uses the configured noise model at p.x.
  GaussianPosterior condition(const ExtendedPoint& p, double y) const;

  MeanVar mean_var(const ExtendedPoint& p) const;
  double correlation(const ExtendedPoint& a, const ExtendedPoint& b) const;
  double covariance(const ExtendedPoint& a, const ExtendedPoint& b) const;
  double noise_correlation_factor(const ExtendedPoint& p) const;
  double noise_variance(const ExtendedPoint& p) const;

  ProbeCache probe(Channel c, const PointSet& points) const;
  // Posterior covariance between two probe batches (rows follow `a`).
  Matrix cross_covariance(const ProbeCache& a, const ProbeCache& b) const;

  const ExtendedKernel& kernel() const { return kernel_; }
  const NoiseModel& noise(Channel c) const { return noise_[index(c)]; }
  const Dataset& dataset() const { return data_; }
  size_t size() const { return data_.size(); }
  // Diagonal jitter currently in the factor of the block holding channel c.
  double jitter(Channel c) const;

 private:
  struct Block {
    PointSet x;
    std::vector<Channel> channels;
    Vector y;
    Vector noise;
    Matrix chol;  // lower triangular
    Vector v;     // chol^-1 y
    double jitter = 0.0;
    double outputscale = 1.0;
    Eigen::Index n() const { return x.cols(); }
  };

  int block_of(Channel c) const { return kernel_.block_diagonal() ? index(c) : 0; }
  Matrix block_gram(const Block& b) const;
  void refactor(Block& b) const;
  std::shared_ptr<const Block> extend(const Block& b, const Observation& obs) const;

  ExtendedKernel kernel_;
  std::array<NoiseModel, 2> noise_;
  Dataset data_;
  std::array<std::shared_ptr<const Block>, 2> blocks_;
};

}  // namespace safebo

#endif  // SAFEBO_GP_HPP_
