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
#include "safebo/inner_opt.hpp"

namespace safebo {
namespace {

Feasibility all_feasible() {
  return [](const PointSet& xs) { return std::vector<char>(static_cast<size_t>(xs.cols()), 1); };
}

SearchProblem problem(const Box& box, Feasibility feas = all_feasible()) {
  SearchProblem p;
  p.box = box;
  p.feasible = std::move(feas);
  p.anchors = {box.center()};
  p.incumbent = box.center();
  return p;
}

SearchConfig grid_cfg(int res) {
  SearchConfig c = SearchConfig::defaults_for(1);
  c.mode = SearchMode::kGrid;
  c.resolution = {res};
  c.refine_steps = 0;
  return c;
}

double g(double t) { return std::sin(3.0 * t) + 0.3 * t * t - 0.2 * t; }

TEST(InnerOpt, ModeStrings) {
  for (SearchMode m : {SearchMode::kGrid, SearchMode::kMultistart, SearchMode::kLine}) {
    EXPECT_EQ(search_mode_from_string(to_string(m)), m);
  }
  EXPECT_THROW(search_mode_from_string("bfgs"), ConfigError);
  EXPECT_EQ(SearchConfig::defaults_for(2).mode, SearchMode::kGrid);
  EXPECT_EQ(SearchConfig::defaults_for(3).mode, SearchMode::kMultistart);
  EXPECT_EQ(SearchConfig::defaults_for(4).mode, SearchMode::kLine);
  SearchConfig bad = grid_cfg(1);
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(InnerOpt, ConstantObjectiveReturnsFirstProbe) {
  const Box box = Box::cube(2, -1.0, 1.0);
  SearchConfig cfg = grid_cfg(7);
  cfg.resolution = {7, 7};
  const JointObjective obj = [](const PointSet& xs, const PointSet& zs) {
    return Matrix::Constant(xs.cols(), zs.cols(), 3.5);
  };
  const JointResult r = maximize_joint(obj, problem(box), cfg, 0);
  EXPECT_EQ(r.value, 3.5);
  EXPECT_EQ(r.x, box.lower);
  EXPECT_EQ(r.z, box.lower);
}

TEST(InnerOpt, GridSeparableMatchesBruteForce) {
  const Box box = Box::cube(1, -2.0, 2.0);
  const int res = 101;
  const JointObjective obj = [](const PointSet& xs, const PointSet& zs) {
    Matrix m(xs.cols(), zs.cols());
    for (Eigen::Index i = 0; i < xs.cols(); ++i)
      for (Eigen::Index j = 0; j < zs.cols(); ++j) m(i, j) = g(xs(0, i)) - 0.5 * g(zs(0, j));
    return m;
  };
  const PointSet grid = box.grid(res);
  Eigen::Index bi = 0, bj = 0;
  for (Eigen::Index i = 1; i < grid.cols(); ++i) {
    if (g(grid(0, i)) > g(grid(0, bi))) bi = i;
    if (-g(grid(0, i)) > -g(grid(0, bj))) bj = i;
  }
  const JointResult r = maximize_joint(obj, problem(box), grid_cfg(res), 0);
  EXPECT_EQ(r.x[0], grid(0, bi));
  EXPECT_EQ(r.z[0], grid(0, bj));
  EXPECT_DOUBLE_EQ(r.value, g(grid(0, bi)) - 0.5 * g(grid(0, bj)));
}

TEST(InnerOpt, GridResultIsMaximalOnRescan) {
  const Box box = Box::cube(2, -1.0, 1.0);
  SearchConfig cfg = grid_cfg(9);
  cfg.resolution = {9, 9};
  cfg.refine_steps = 3;
  const Feasibility feas = [](const PointSet& xs) {
    std::vector<char> ok(static_cast<size_t>(xs.cols()));
    for (Eigen::Index j = 0; j < xs.cols(); ++j) ok[static_cast<size_t>(j)] = xs.col(j).norm() <= 0.7;
    return ok;
  };
  const JointObjective obj = [](const PointSet& xs, const PointSet& zs) {
    Matrix m(xs.cols(), zs.cols());
    for (Eigen::Index i = 0; i < xs.cols(); ++i)
      for (Eigen::Index j = 0; j < zs.cols(); ++j)
        m(i, j) = std::exp(-(xs.col(i) - zs.col(j)).squaredNorm()) * (1.0 + xs(0, i)) + zs(1, j);
    return m;
  };
  const SearchProblem p = problem(box, feas);
  const JointResult r = maximize_joint(obj, p, cfg, 0);
  EXPECT_TRUE(feas(PointSet(r.x))[0]);
  const PointSet xs = feasible_probes(box, cfg.resolution, feas, p.anchors, cfg.refine_steps);
  const Matrix all = obj(xs, box.grid(cfg.resolution));
  EXPECT_EQ(r.value, all.maxCoeff());
  // Refinement found boundary points beyond the grid nodes.
  EXPECT_GT(xs.cols(), 0);
  bool off_grid = false;
  for (Eigen::Index j = 0; j < xs.cols(); ++j) {
    const double t = (xs(0, j) + 1.0) * 4.0;
    off_grid |= std::abs(t - std::round(t)) > 1e-9;
  }
  EXPECT_TRUE(off_grid);
}

TEST(InnerOpt, NoFeasibleProbeStalls) {
  const Box box = Box::cube(1, 0.0, 1.0);
  SearchProblem p = problem(box, [](const PointSet& xs) {
    return std::vector<char>(static_cast<size_t>(xs.cols()), 0);
  });
  p.anchors.clear();
  const SingleObjective obj = [](const PointSet& xs) { return Vector::Zero(xs.cols()).eval(); };
  EXPECT_THROW(maximize_single(obj, p, grid_cfg(11), 0), ExplorationStallError);
}

TEST(InnerOpt, MultistartFindsQuadraticPeak) {
  const Box box = Box::cube(3, -1.0, 1.0);
  Vector peak(3);
  peak << 0.31, -0.42, 0.173;
  const SingleObjective obj = [&](const PointSet& xs) {
    return (-(xs.colwise() - peak).colwise().squaredNorm()).transpose().eval();
  };
  SearchConfig cfg = SearchConfig::defaults_for(3);
  cfg.mode = SearchMode::kMultistart;
  const SingleResult r = maximize_single(obj, problem(box), cfg, 4);
  EXPECT_LT((r.x - peak).norm(), 1e-3);
}

TEST(InnerOpt, FeasibilityExcludesPeak) {
  const Box box = Box::cube(1, -1.0, 1.0);
  const Feasibility feas = [](const PointSet& xs) {
    std::vector<char> ok(static_cast<size_t>(xs.cols()));
    for (Eigen::Index j = 0; j < xs.cols(); ++j) ok[static_cast<size_t>(j)] = xs(0, j) <= 0.0;
    return ok;
  };
  const SingleObjective obj = [](const PointSet& xs) {
    return (-(xs.row(0).array() - 0.5).square()).transpose().matrix().eval();
  };
  for (SearchMode mode : {SearchMode::kGrid, SearchMode::kMultistart}) {
    SearchConfig cfg = grid_cfg(21);
    cfg.mode = mode;
    const SingleResult r = maximize_single(obj, problem(box, feas), cfg, 1);
    EXPECT_LE(r.x[0], 0.0);
    EXPECT_NEAR(r.x[0], 0.0, 1e-3);
  }
}

TEST(InnerOpt, MultistartJointBeatsCoarseFloorAndIsDeterministic) {
  const Box box = Box::cube(3, -1.0, 1.0);
  const JointObjective obj = [](const PointSet& xs, const PointSet& zs) {
    Matrix m(xs.cols(), zs.cols());
    for (Eigen::Index i = 0; i < xs.cols(); ++i)
      for (Eigen::Index j = 0; j < zs.cols(); ++j)
        m(i, j) = std::cos(2.0 * xs(0, i)) * std::sin(zs(1, j) + 0.3) - 0.1 * xs.col(i).squaredNorm();
    return m;
  };
  SearchConfig cfg = SearchConfig::defaults_for(3);
  const SearchProblem p = problem(box);
  const JointResult a = maximize_joint(obj, p, cfg, 9);
  const JointResult b = maximize_joint(obj, p, cfg, 9);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.z, b.z);
  EXPECT_EQ(a.value, b.value);
  const PointSet coarse = box.grid(5);
  EXPECT_GE(a.value, obj(coarse, coarse).maxCoeff());
}

TEST(InnerOpt, LineModeStaysOnLine) {
  const Box box = Box::cube(4, -1.0, 1.0);
  SearchProblem p = problem(box);
  p.incumbent = Vector::Constant(4, 0.2);
  SearchConfig cfg = SearchConfig::defaults_for(4);
  ASSERT_EQ(cfg.mode, SearchMode::kLine);
  const JointObjective obj = [](const PointSet& xs, const PointSet& zs) {
    Matrix m(xs.cols(), zs.cols());
    for (Eigen::Index i = 0; i < xs.cols(); ++i)
      for (Eigen::Index j = 0; j < zs.cols(); ++j) m(i, j) = xs(2, i) - zs.col(j).norm();
    return m;
  };
  const JointResult r = maximize_joint(obj, p, cfg, 17);
  ASSERT_EQ(r.direction.size(), 4);
  for (const Vector* q : {&r.x, &r.z}) {
    const Vector off = *q - p.incumbent;
    const Vector perp = off - off.dot(r.direction) * r.direction;
    EXPECT_LT(perp.norm(), 1e-12);
    EXPECT_TRUE(box.contains(*q, 1e-12));
  }
  EXPECT_EQ(maximize_joint(obj, p, cfg, 17).x, r.x);
  EXPECT_NE(maximize_joint(obj, p, cfg, 18).direction, r.direction);
}

TEST(InnerOpt, ExhaustiveUpperBoundPruningIsExact) {
  const Box box = Box::cube(1, 0.0, 1.0);
  const PointSet xs = box.grid(57), zs = box.grid(33);
  const JointObjective obj = [](const PointSet& a, const PointSet& b) {
    Matrix m(a.cols(), b.cols());
    for (Eigen::Index i = 0; i < a.cols(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j) m(i, j) = a(0, i) * std::cos(5.0 * b(0, j));
    return m;
  };
  const UpperBound ub = [](const PointSet& a) { return a.row(0).transpose().eval(); };
  const JointResult plain = exhaustive_joint(obj, xs, zs, 8);
  const JointResult pruned = exhaustive_joint(obj, xs, zs, 8, ub);
  EXPECT_EQ(plain.x, pruned.x);
  EXPECT_EQ(plain.z, pruned.z);
  EXPECT_EQ(plain.value, pruned.value);
  EXPECT_LE(pruned.evaluations, plain.evaluations);
}

}  // namespace
}  // namespace safebo
