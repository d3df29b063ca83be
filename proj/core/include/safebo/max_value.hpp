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

#ifndef SAFEBO_MAX_VALUE_HPP_
#define SAFEBO_MAX_VALUE_HPP_

#include <cstdint>

#include "safebo/gp.hpp"
#include "safebo/safe_set.hpp"
#include "safebo/types.hpp"

namespace safebo {

struct MaxValueSample {
  double ystar = 0.0;
  // Fitted Gumbel location and scale.
  double location = 0.0;
  double scale = 0.0;
  Eigen::Index candidates = 0;
};

// Draws one value of max_i f_i for independent Gaussian marginals via the
// Gumbel fit to the quartiles of prod_i cdf((y - mu_i) / sigma_i). The
// sample is never below max_i mu_i.
MaxValueSample gumbel_max_value(const Vector& mean, const Vector& stddev, std::uint64_t seed);

struct MaxValueOptions {
  int candidates = 1000;
  bool restrict_to_safe = true;
};

// Candidate set for max-value sampling: scrambled Sobol points (filtered
// by the safe set when requested), archived points and local perturbations
// of archived points.
PointSet max_value_candidates(const GaussianPosterior& gp, const SafeRegion& region,
                              const Box& box, int n, std::uint64_t seed,
                              const MaxValueOptions& options = {});

MaxValueSample sample_max_value(const GaussianPosterior& gp, const SafeRegion& region,
                                const Box& box, int n, std::uint64_t seed,
                                const MaxValueOptions& options = {});

}  // namespace safebo

#endif  // SAFEBO_MAX_VALUE_HPP_
