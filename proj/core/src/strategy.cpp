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

#include "safebo/strategy.hpp"

#include <cmath>
#include <sstream>

#include "safebo/acquisition.hpp"
#include "safebo/baselines.hpp"
#include "safebo/errors.hpp"

namespace safebo {

namespace {

std::string format_number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

Vector mes_values(const GaussianPosterior& gp, const PointSet& xs, double ystar) {
  const ProbeCache c = gp.probe(Channel::kObjective, xs);
  const Vector nv = gp.noise(Channel::kObjective).variance(xs);
  Vector out(xs.cols());
  for (Eigen::Index i = 0; i < xs.cols(); ++i) {
    out[i] = alpha_mes_noisy(c.mean[i], std::sqrt(c.variance[i]), nv[i], ystar);
  }
  return out;
}

Vector mes_hat_values(const GaussianPosterior& gp, const PointSet& xs, double phi) {
  const ProbeCache c = gp.probe(Channel::kObjective, xs);
  Vector out(xs.cols());
  for (Eigen::Index i = 0; i < xs.cols(); ++i) {
    out[i] = alpha_mes_hat(c.mean[i], std::sqrt(c.variance[i]), phi);
  }
  return out;
}

}  // namespace

StrategySpec StrategySpec::parse(const std::string& name) {
  StrategySpec s;
  if (name == "ise_bo") {
    s.kind = StrategyKind::kIseBo;
  } else if (name == "ise_only") {
    s.kind = StrategyKind::kIseOnly;
  } else if (name == "mes_safe") {
    s.kind = StrategyKind::kMesSafe;
  } else if (name == "mes_unconstrained") {
    s.kind = StrategyKind::kMesUnconstrained;
  } else if (name == "uncertainty") {
    s.kind = StrategyKind::kUncertainty;
  } else if (name == "safeopt") {
    s.kind = StrategyKind::kSafeOpt;
  } else if (name == "theory_combined") {
    s.kind = StrategyKind::kTheoryCombined;
  } else {
    throw ConfigError("unknown strategy '" + name + "'");
  }
  return s;
}

std::string StrategySpec::name() const {
  switch (kind) {
    case StrategyKind::kIseBo:
      return "ise_bo";
    case StrategyKind::kIseOnly:
      return "ise_only";
    case StrategyKind::kMesSafe:
      return "mes_safe";
    case StrategyKind::kMesUnconstrained:
      return "mes_unconstrained";
    case StrategyKind::kUncertainty:
      return "uncertainty";
    case StrategyKind::kSafeOpt:
      return "safeopt";
    case StrategyKind::kTheoryCombined:
      return "theory_combined";
  }
  return "unknown";
}

std::string StrategySpec::label() const {
  if (kind == StrategyKind::kSafeOpt) return "safeopt_L" + format_number(lipschitz);
  if (kind == StrategyKind::kTheoryCombined) return "theory_combined_phi" + format_number(phi);
  return name();
}

Vector incumbent(const GaussianPosterior& gp, const SafeRegion& region) {
  const PointSet pts = to_point_set(region.archive());
  const ProbeCache c = gp.probe(Channel::kObjective, pts);
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < pts.cols(); ++j) {
    if (better(c.mean[j], pts.col(j), c.mean[best], pts.col(best))) best = j;
  }
  return pts.col(best);
}

Selection select_next(const StrategySpec& spec, const SelectionContext& ctx) {
  if (spec.kind == StrategyKind::kMesSafe) return select_baseline(spec, ctx);
  if (spec.kind != StrategyKind::kIseBo && spec.kind != StrategyKind::kIseOnly &&
      spec.kind != StrategyKind::kTheoryCombined) {
    throw ConfigError("select_next does not handle strategy " + spec.name());
  }
  const GaussianPosterior& gp = *ctx.gp;
  const SafeRegion& region = *ctx.region;
  const int n = ctx.iteration;

  SearchProblem problem;
  problem.box = ctx.box;
  problem.feasible = [&](const PointSet& xs) { return region.is_safe(gp, xs, n); };
  problem.anchors = region.archive();
  problem.incumbent = incumbent(gp, region);

  IseEvaluator ise(gp);
  Diagnostics diag;
  std::function<Vector(const PointSet&)> second = nullptr;
  double weight = 1.0;
  if (spec.kind == StrategyKind::kIseBo) {
    const MaxValueSample ys = sample_max_value(gp, region, ctx.box, n, derive_seed(ctx.seed, 11), ctx.max_value);
    diag.ystar = ys.ystar;
    weight = ctx.mes_weight;
    second = [&gp, y = ys.ystar](const PointSet& xs) { return mes_values(gp, xs, y); };
  } else if (spec.kind == StrategyKind::kTheoryCombined) {
    if (!(spec.phi > 0.0)) throw ConfigError("theory_combined needs phi > 0");
    diag.ystar = spec.phi;
    second = [&gp, phi = spec.phi](const PointSet& xs) { return mes_hat_values(gp, xs, phi); };
  }

  JointObjective objective = [&](const PointSet& xs, const PointSet& zs) {
    Matrix v = ise(xs, zs);
    if (second) {
      const Vector m = weight * second(xs);
      for (Eigen::Index i = 0; i < v.rows(); ++i) v.row(i) = v.row(i).array().max(m[i]);
    }
    return v;
  };
  UpperBound bound = [&](const PointSet& xs) {
    Vector b = ise.upper_bound(xs);
    if (second) b = b.cwiseMax(weight * second(xs));
    return b;
  };

  const JointResult r = maximize_joint(objective, problem, ctx.search, derive_seed(ctx.seed, 12), bound);
  PointSet xstar(r.x.size(), 1);
  xstar.col(0) = r.x;
  PointSet targets = r.targets;
  if (targets.cols() == 0) targets = PointSet(r.z);
  const Matrix row = ise(xstar, targets);
  const double at_z = ise(xstar, PointSet(r.z))(0, 0);
  diag.alpha_ise = std::max(row.maxCoeff(), at_z);
  diag.z = r.z;
  diag.value = r.value;
  diag.evaluations = r.evaluations;
  if (second) {
    diag.alpha_mes = second(xstar)[0];
    diag.component = weight * diag.alpha_mes > diag.alpha_ise ? "mes" : "ise";
  } else {
    diag.component = "ise";
  }
  return {r.x, diag};
}

Selection select_strategy(const StrategySpec& spec, const SelectionContext& ctx) {
  switch (spec.kind) {
    case StrategyKind::kIseBo:
    case StrategyKind::kIseOnly:
    case StrategyKind::kTheoryCombined:
      return select_next(spec, ctx);
    default:
      return select_baseline(spec, ctx);
  }
}

}  // namespace safebo
