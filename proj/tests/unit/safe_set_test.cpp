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

#include <cmath>

#include <gtest/gtest.h>

#include "safebo/errors.hpp"
#include "safebo/safe_set.hpp"

namespace safebo {
namespace {

GaussianPosterior unit_gp(double lengthscale = 0.5) {
  return GaussianPosterior(ExtendedKernel::shared(KernelSpec::rbf(1, lengthscale, 1.0)),
                           NoiseModel::homoskedastic(0.05));
}

Vector pt(double v) { return Vector::Constant(1, v); }

TEST(BetaSchedule, Constant) {
  const BetaSchedule b = BetaSchedule::constant(2.0);
  for (int n : {0, 1, 50, 1000}) EXPECT_EQ(b(n), 2.0);
  EXPECT_THROW(BetaSchedule::constant(0.0), ConfigError);
}

TEST(BetaSchedule, TheoreticalValue) {
  std::vector<double> gamma(6, 0.0);
  gamma[5] = 5.0;
  const BetaSchedule b = BetaSchedule::theoretical(2.0, 1.0, 0.1, gamma);
  // 2 + sqrt(2 (1 + ln 10 + 5)).
  EXPECT_NEAR(b(5), 6.0749441942, 1e-9);
  EXPECT_NEAR(b(0), 2.0 + std::sqrt(2.0 * (1.0 + std::log(10.0))), 1e-12);
  EXPECT_THROW(b(6), ConfigError);
  EXPECT_THROW(b(-1), ConfigError);
}

TEST(BetaSchedule, TheoreticalRejectsBadRisk) {
  EXPECT_THROW(BetaSchedule::theoretical(2.0, 1.0, 0.0, {1.0}), ConfigError);
  EXPECT_THROW(BetaSchedule::theoretical(2.0, 1.0, 1.0, {1.0}), ConfigError);
  EXPECT_THROW(BetaSchedule::theoretical(2.0, 1.0, 0.1, {}), ConfigError);
}

TEST(BetaSchedule, MonotoneInCapacity) {
  std::vector<double> gamma;
  for (int n = 0; n <= 100; ++n) gamma.push_back(std::log1p(n) * 3.0);
  const BetaSchedule b = BetaSchedule::theoretical(1.0, 0.5, 0.05, gamma);
  for (int n = 1; n <= 100; ++n) {
    EXPECT_GE(b(n), b(n - 1));
    EXPECT_GT(b(n), 0.0);
  }
}

TEST(SafeRegion, EmptyDataOnlySeedIsSafe) {
  const GaussianPosterior gp = unit_gp();
  const SafeRegion region(pt(0.0), BetaSchedule::constant(2.0));
  EXPECT_TRUE(region.is_safe(gp, pt(0.0), 0));
  EXPECT_FALSE(region.is_safe(gp, pt(0.3), 0));
  EXPECT_EQ(region.archive_size(), 1u);
}

TEST(SafeRegion, LcbThreshold) {
  // One observation of 1 at 0: mean 1/1.05, sd sqrt(0.05/1.05).
  const GaussianPosterior gp = unit_gp().condition({pt(0.0), Channel::kConstraint}, 1.0);
  const double mu = 1.0 / 1.05, sd = std::sqrt(0.05 / 1.05);
  const double beta_edge = mu / sd;
  const SafeRegion tight(pt(5.0), BetaSchedule::constant(beta_edge * 1.001));
  const SafeRegion loose(pt(5.0), BetaSchedule::constant(beta_edge * 0.999));
  EXPECT_FALSE(tight.is_safe(gp, pt(0.0), 1));
  EXPECT_TRUE(loose.is_safe(gp, pt(0.0), 1));
  PointSet xs(1, 3);
  xs << 0.0, 1.5, 5.0;
  const std::vector<char> flags = loose.is_safe(gp, xs, 1);
  EXPECT_TRUE(flags[0]);
  EXPECT_FALSE(flags[1]);
  EXPECT_TRUE(flags[2]);
}

TEST(SafeRegion, CertifyRequiresSafety) {
  const GaussianPosterior gp = unit_gp();
  SafeRegion region(pt(0.0), BetaSchedule::constant(2.0));
  EXPECT_THROW(region.certify(gp, pt(0.4), 0), ContractViolation);
  EXPECT_NO_THROW(region.certify(gp, pt(0.0), 0));
  EXPECT_EQ(region.archive_size(), 1u);
}

TEST(SafeRegion, ArchiveKeepsPointsAfterLcbDrops) {
  GaussianPosterior gp = unit_gp();
  for (int i = 0; i < 5; ++i) gp = gp.condition({pt(0.5), Channel::kConstraint}, 2.0);
  SafeRegion region(pt(0.0), BetaSchedule::constant(2.0));
  ASSERT_TRUE(region.is_safe(gp, pt(0.5), 1));
  region.certify(gp, pt(0.5), 1);
  // Strongly negative data at the same location pulls the bound down.
  GaussianPosterior worse = gp;
  for (int i = 0; i < 20; ++i) worse = worse.condition({pt(0.5), Channel::kConstraint}, -3.0);
  PointSet p(1, 1);
  p << 0.5;
  EXPECT_LT(constraint_lcb(worse, p, 2.0)[0], 0.0);
  EXPECT_TRUE(region.is_safe(worse, pt(0.5), 2));
  EXPECT_TRUE(region.in_archive(pt(0.5)));
}

TEST(SafeRegion, CertifyPassingIsMonotone) {
  GaussianPosterior gp = unit_gp(0.3);
  SafeRegion region(pt(0.0), BetaSchedule::constant(2.0));
  const PointSet grid = Box::cube(1, -1.0, 1.0).grid(41);
  size_t last = region.archive_size();
  for (int i = 0; i < 10; ++i) {
    const double x = -0.5 + 0.1 * i;
    gp = gp.condition({pt(x), Channel::kConstraint}, 1.5);
    region.certify_passing(gp, grid, i + 1);
    EXPECT_GE(region.archive_size(), last);
    last = region.archive_size();
  }
  EXPECT_GT(last, 1u);
  EXPECT_EQ(region.certify_passing(gp, grid, 11), 0);
}

}  // namespace
}  // namespace safebo
