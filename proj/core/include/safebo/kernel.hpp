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

#ifndef SAFEBO_KERNEL_HPP_
#define SAFEBO_KERNEL_HPP_

#include <array>
#include <functional>

#include "safebo/types.hpp"

namespace safebo {

enum class Channel : int { kObjective = 0, kConstraint = 1 };

inline int index(Channel c) { return static_cast<int>(c); }

// A parameter tagged with the output it refers to.
struct ExtendedPoint {
  Vector x;
  Channel channel = Channel::kConstraint;
};

// Squared-exponential kernel with one lengthscale per input dimension.
struct KernelSpec {
  Vector lengthscale;
  double outputscale = 1.0;

  static KernelSpec rbf(int dim, double lengthscale, double outputscale);

  int dim() const { return static_cast<int>(lengthscale.size()); }
  double prior_variance() const { return outputscale; }
  // Same correlation structure with unit outputscale.
  KernelSpec normalized() const;
  void validate() const;

  double operator()(const Vector& a, const Vector& b) const;
  // exp(-r^2/2) only, without the outputscale.
  Matrix correlation(const PointSet& a, const PointSet& b) const;
  Matrix gram(const PointSet& a, const PointSet& b) const;
};

// Kernel over parameter x channel. Block diagonal unless cross_correlation
// is nonzero, which requires both channels to share lengthscales:
//   k((x,0),(x',1)) = c * sqrt(o_0 o_1) * r(x,x').
struct ExtendedKernel {
  std::array<KernelSpec, 2> channel;
  double cross_correlation = 0.0;

  static ExtendedKernel independent(KernelSpec objective, KernelSpec constraint);
  static ExtendedKernel shared(KernelSpec k) { return independent(k, k); }

  bool block_diagonal() const { return cross_correlation == 0.0; }
  const KernelSpec& operator[](Channel c) const { return channel[index(c)]; }
  int dim() const { return channel[0].dim(); }
  void validate() const;

  double scale(Channel a, Channel b) const;
  double operator()(const ExtendedPoint& a, const ExtendedPoint& b) const;
  // Rows follow `a` with per-row channels, columns follow `b` on channel cb.
  Matrix gram(const PointSet& a, const std::vector<Channel>& ca,
              const PointSet& b, Channel cb) const;
};

// Observation noise variance, constant or a function of the parameter.
class NoiseModel {
 public:
  enum class Kind { kHomoskedastic, kHeteroskedastic };

  NoiseModel() = default;
  static NoiseModel homoskedastic(double variance);
  static NoiseModel heteroskedastic(std::function<double(const Vector&)> fn);

  Kind kind() const { return kind_; }
  double variance(const Vector& x) const;
  double operator()(const Vector& x) const { return variance(x); }
  Vector variance(const PointSet& xs) const;

 private:
  Kind kind_ = Kind::kHomoskedastic;
  double constant_ = 1e-2;
  std::function<double(const Vector&)> fn_;
};

}  // namespace safebo

#endif  // SAFEBO_KERNEL_HPP_
