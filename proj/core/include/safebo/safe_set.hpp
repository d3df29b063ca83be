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

#ifndef SAFEBO_SAFE_SET_HPP_
#define SAFEBO_SAFE_SET_HPP_

#include <set>
#include <vector>

#include "safebo/gp.hpp"
#include "safebo/types.hpp"

namespace safebo {

// Confidence multiplier beta_n.
class BetaSchedule {
 public:
  enum class Mode { kConstant, kTheoretical };

  BetaSchedule() : BetaSchedule(constant(2.0)) {}
  static BetaSchedule constant(double beta);
  // B + R sqrt(2 (ln(e/delta) + gamma_n)); gamma[n] must cover every queried n.
  static BetaSchedule theoretical(double rkhs_bound, double subgaussian, double delta,
                                  std::vector<double> gamma);

  Mode mode() const { return mode_; }
  double operator()(int n) const;

 private:
  BetaSchedule(Mode mode, double value) : mode_(mode), value_(value) {}

  Mode mode_;
  double value_ = 2.0;
  double rkhs_bound_ = 0.0;
  double subgaussian_ = 1.0;
  double delta_ = 0.1;
  std::vector<double> gamma_;
};

// Lower confidence bound of the constraint channel at a batch of points.
Vector constraint_lcb(const GaussianPosterior& gp, const PointSet& xs, double beta);

// Certified-safe region: the current LCB test joined with an archive of
// every point certified so far and the safe seed.
class SafeRegion {
 public:
  SafeRegion(Vector seed, BetaSchedule beta);

  double beta(int n) const { return beta_(n); }
  const Vector& seed() const { return seed_; }
  const std::vector<Vector>& archive() const { return archive_; }
  size_t archive_size() const { return archive_.size(); }
  bool in_archive(const Vector& x) const;

  bool is_safe(const GaussianPosterior& gp, const Vector& x, int n) const;
  std::vector<char> is_safe(const GaussianPosterior& gp, const PointSet& xs, int n) const;
  // Same test with LCB values already computed for `xs`.
  std::vector<char> is_safe(const PointSet& xs, const Vector& lcb) const;

  // Adds x to the archive; x must be safe under the given posterior.
  void certify(const GaussianPosterior& gp, const Vector& x, int n);
  // Certifies every column of xs that passes the lower-bound test; returns
  // the number of new archive entries.
  int certify_passing(const GaussianPosterior& gp, const PointSet& xs, int n);

 private:
  bool remembered(const Vector& x) const;

  Vector seed_;
  BetaSchedule beta_;
  std::vector<Vector> archive_;
  std::set<std::vector<double>> lookup_;
};

}  // namespace safebo

#endif  // SAFEBO_SAFE_SET_HPP_
