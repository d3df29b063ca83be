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

#include "safebo/max_value.hpp"

#include <algorithm>
#include <cmath>

#include <boost/random/sobol.hpp>
#include <boost/random/uniform_01.hpp>

#include "safebo/errors.hpp"
#include "safebo/normal.hpp"

namespace safebo {

namespace {

double log_max_cdf(double y, const Vector& mean, const Vector& stddev) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    if (stddev[i] > 0.0) {
      s += log_normal_cdf((y - mean[i]) / stddev[i]);
    } else if (y < mean[i]) {
      return -INFINITY;
    }
  }
  return s;
}

double quantile(double q, const Vector& mean, const Vector& stddev, double lo, double hi) {
  const double target = std::log(q);
  for (int it = 0; it < 100 && hi - lo > 1e-12 * (1.0 + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (log_max_cdf(mid, mean, stddev) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

MaxValueSample gumbel_max_value(const Vector& mean, const Vector& stddev, std::uint64_t seed) {
  if (mean.size() == 0) throw ExplorationStallError("max-value sampling needs at least one candidate");
  MaxValueSample out;
  out.candidates = mean.size();
  const double top = mean.maxCoeff();
  const double smax = stddev.maxCoeff();
  if (!(smax > 1e-12)) {
    out.ystar = out.location = top;
    return out;
  }
  const double lo = top - 10.0 * smax;
  const double hi = (mean.array() + 10.0 * stddev.array()).maxCoeff();
  const double y25 = quantile(0.25, mean, stddev, lo, hi);
  const double y50 = quantile(0.50, mean, stddev, lo, hi);
  const double y75 = quantile(0.75, mean, stddev, lo, hi);
  const double b = (y75 - y25) / (std::log(std::log(4.0)) - std::log(std::log(4.0 / 3.0)));
  const double a = y50 + b * std::log(std::log(2.0));
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  u = std::clamp(u, 1e-12, 1.0 - 1e-12);
  out.location = a;
  out.scale = b;
  out.ystar = std::max(a - b * std::log(-std::log(u)), top);
  return out;
}

PointSet max_value_candidates(const GaussianPosterior& gp, const SafeRegion& region,
                              const Box& box, int n, std::uint64_t seed,
                              const MaxValueOptions& options) {
  const int d = box.dim();
  const int budget = std::max(options.candidates, 1);
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Cranley-Patterson rotation of a Sobol sequence.
  Vector shift(d);
  for (int k = 0; k < d; ++k) shift[k] = unif(rng);
  boost::random::sobol sobol(static_cast<std::size_t>(d));
  boost::random::uniform_01<double> to_unit;
  PointSet quasi(d, budget);
  for (int j = 0; j < budget; ++j) {
    for (int k = 0; k < d; ++k) {
      double v = to_unit(sobol) + shift[k];
      v -= std::floor(v);
      quasi(k, j) = box.lower[k] + v * (box.upper[k] - box.lower[k]);
    }
  }

  std::vector<Vector> points;
  const auto& archive = region.archive();
  {
    std::vector<char> ok(static_cast<size_t>(quasi.cols()), 1);
    if (options.restrict_to_safe) ok = region.is_safe(gp, quasi, n);
    for (Eigen::Index j = 0; j < quasi.cols(); ++j) {
      if (ok[static_cast<size_t>(j)]) points.push_back(quasi.col(j));
    }
  }
  // Most recent archive entries, which include every evaluated point.
  const size_t take = std::min(archive.size(), static_cast<size_t>(budget));
  for (size_t i = archive.size() - take; i < archive.size(); ++i) points.push_back(archive[i]);

  // Local perturbations around archived points keep the set populated
  // while the safe region is still small.
  const int remaining = budget - static_cast<int>(points.size());
  if (remaining > 0 && take > 0) {
    const Vector& ls = gp.kernel()[Channel::kObjective].lengthscale;
    std::normal_distribution<double> normal;
    const int per_point = std::max(1, remaining / static_cast<int>(take));
    PointSet local(d, per_point * static_cast<Eigen::Index>(take));
    Eigen::Index c = 0;
    for (size_t i = archive.size() - take; i < archive.size(); ++i) {
      for (int r = 0; r < per_point; ++r) {
        Vector p(d);
        for (int k = 0; k < d; ++k) p[k] = archive[i][k] + 0.25 * ls[k] * normal(rng);
        local.col(c++) = box.clamp(p);
      }
    }
    std::vector<char> ok(static_cast<size_t>(local.cols()), 1);
    if (options.restrict_to_safe) ok = region.is_safe(gp, local, n);
    for (Eigen::Index j = 0; j < local.cols() && static_cast<int>(points.size()) < budget; ++j) {
      if (ok[static_cast<size_t>(j)]) points.push_back(local.col(j));
    }
  }
  return to_point_set(points);
}

MaxValueSample sample_max_value(const GaussianPosterior& gp, const SafeRegion& region,
                                const Box& box, int n, std::uint64_t seed,
                                const MaxValueOptions& options) {
  const PointSet cand = max_value_candidates(gp, region, box, n, derive_seed(seed, 1), options);
  if (cand.cols() == 0) throw ExplorationStallError("no candidate for max-value sampling");
  const ProbeCache c = gp.probe(Channel::kObjective, cand);
  return gumbel_max_value(c.mean, c.stddev(), derive_seed(seed, 2));
}

}  // namespace safebo
