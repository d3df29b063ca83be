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

#ifndef SAFEBO_ACQUISITION_HPP_
#define SAFEBO_ACQUISITION_HPP_

#include <numbers>

#include "safebo/gp.hpp"
#include "safebo/types.hpp"

namespace safebo {

// Constants of the Gaussian-shaped approximation of the binary entropy of
// the safety indicator.
struct EntropyConstants {
  static constexpr double kLn2 = std::numbers::ln2;
  static constexpr double kC1 = 1.0 / (std::numbers::pi * std::numbers::ln2);
  static constexpr double kC2 = 2.0 * kC1 - 1.0;
};

// Probability that a Gaussian N(mu, sigma^2) is negative.
double unsafe_prob(double mu, double sigma);
// Binary entropy (nats) of the safety indicator.
double exact_entropy(double mu, double sigma);
double approx_entropy(double mu, double sigma);

// Quantities describing a measurement at x and a target z on the
// constraint channel.
struct MIQuery {
  double mu_z = 0.0;
  double sigma_z = 1.0;
  double sigma_x = 1.0;
  double rho = 0.0;  // posterior correlation of s(x) and s(z)
  double noise_variance = 1.0;
};

MIQuery make_mi_query(const GaussianPosterior& gp, const Vector& x, const Vector& z);

// Expected approximate entropy at z after a noisy measurement at x.
double expected_post_entropy(const MIQuery& q);
// approx_entropy(z) - expected_post_entropy(x, z), evaluated in a
// cancellation-free form and clamped to 0 below 1e-14.
double ise_mutual_info(const MIQuery& q);
// Same, from r2 = mu_z^2 / sigma_z^2 and t = rho^2 * sigma_x^2 / (sigma_x^2 + noise).
double ise_mutual_info_reduced(double r2, double t);

// Upper bound ln2 * sigma_x^2 / noise on the ISE information gain.
inline double ise_upper_bound(double var_x, double noise_variance) {
  return EntropyConstants::kLn2 * var_x / noise_variance;
}

// Single-sample max-value entropy search for a noiseless observation:
// theta * pdf / (2 cdf) - ln cdf at theta = (ystar - mu) / sigma.
double alpha_mes(double mu, double sigma, double ystar);
// Information between a noisy observation y = f(x) + noise and the event
// f(x) <= ystar. Reduces to alpha_mes as the noise vanishes and never
// exceeds 0.5 * ln(1 + sigma^2 / noise).
double alpha_mes_noisy(double mu, double sigma, double noise_variance, double ystar);
// sigma^2 / (phi - mu)^2; requires phi > mu.
double alpha_mes_hat(double mu, double sigma, double phi);

// Matrix of ISE information gains for measurement points `xs` (rows) and
// targets `zs` (columns) on the constraint channel.
class IseEvaluator {
 public:
  explicit IseEvaluator(const GaussianPosterior& gp) : gp_(gp) {}

  Matrix operator()(const PointSet& xs, const PointSet& zs) const;
  // Upper bound of max_z I(x, z) for each x.
  Vector upper_bound(const PointSet& xs) const;

 private:
  const ProbeCache& targets(const PointSet& zs) const;

  const GaussianPosterior& gp_;
  mutable ProbeCache zcache_;
  mutable bool has_zcache_ = false;
};

}  // namespace safebo

#endif  // SAFEBO_ACQUISITION_HPP_
