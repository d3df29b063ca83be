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

#include "safebo/safe_set.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "safebo/errors.hpp"

namespace safebo {

namespace {

std::vector<double> key(const Vector& x) { return {x.data(), x.data() + x.size()}; }

}  // namespace

BetaSchedule BetaSchedule::constant(double beta) {
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  return BetaSchedule(Mode::kConstant, beta);
}

BetaSchedule BetaSchedule::theoretical(double rkhs_bound, double subgaussian, double delta,
                                       std::vector<double> gamma) {
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (rkhs_bound < 0.0 || !(subgaussian > 0.0)) throw ConfigError("B must be >= 0 and R > 0");
  if (gamma.empty()) throw ConfigError("theoretical beta needs an information capacity sequence");
  BetaSchedule b(Mode::kTheoretical, 0.0);
  b.rkhs_bound_ = rkhs_bound;
  b.subgaussian_ = subgaussian;
  b.delta_ = delta;
  b.gamma_ = std::move(gamma);
  return b;
}

double BetaSchedule::operator()(int n) const {
  if (mode_ == Mode::kConstant) return value_;
  if (n < 0 || static_cast<size_t>(n) >= gamma_.size()) {
    std::ostringstream msg;
    msg << "information capacity not available for n = " << n;
    throw ConfigError(msg.str());
  }
  return rkhs_bound_ +
         subgaussian_ * std::sqrt(2.0 * (std::log(std::numbers::e / delta_) + gamma_[static_cast<size_t>(n)]));
}

Vector constraint_lcb(const GaussianPosterior& gp, const PointSet& xs, double beta) {
  const ProbeCache c = gp.probe(Channel::kConstraint, xs);
  return c.mean.array() - beta * c.variance.array().sqrt();
}

SafeRegion::SafeRegion(Vector seed, BetaSchedule beta)
    : seed_(std::move(seed)), beta_(std::move(beta)) {
  archive_.push_back(seed_);
  lookup_.insert(key(seed_));
}

bool SafeRegion::in_archive(const Vector& x) const { return lookup_.count(key(x)) > 0; }

bool SafeRegion::remembered(const Vector& x) const { return in_archive(x); }

bool SafeRegion::is_safe(const GaussianPosterior& gp, const Vector& x, int n) const {
  if (remembered(x)) return true;
  PointSet p(x.size(), 1);
  p.col(0) = x;
  return constraint_lcb(gp, p, beta(n))[0] >= 0.0;
}

std::vector<char> SafeRegion::is_safe(const GaussianPosterior& gp, const PointSet& xs, int n) const {
  return is_safe(xs, constraint_lcb(gp, xs, beta(n)));
}

std::vector<char> SafeRegion::is_safe(const PointSet& xs, const Vector& lcb) const {
  std::vector<char> out(static_cast<size_t>(xs.cols()));
  for (Eigen::Index j = 0; j < xs.cols(); ++j) {
    out[static_cast<size_t>(j)] = lcb[j] >= 0.0 || remembered(xs.col(j));
  }
  return out;
}

void SafeRegion::certify(const GaussianPosterior& gp, const Vector& x, int n) {
  if (remembered(x)) return;
  if (!is_safe(gp, x, n)) {
    throw ContractViolation("certify called on a point that does not pass the safety test");
  }
  archive_.push_back(x);
  lookup_.insert(key(x));
}

int SafeRegion::certify_passing(const GaussianPosterior& gp, const PointSet& xs, int n) {
  const Vector lcb = constraint_lcb(gp, xs, beta(n));
  int added = 0;
  for (Eigen::Index j = 0; j < xs.cols(); ++j) {
    if (lcb[j] >= 0.0 && !remembered(xs.col(j))) {
      archive_.push_back(xs.col(j));
      lookup_.insert(key(xs.col(j)));
      ++added;
    }
  }
  return added;
}

}  // namespace safebo
