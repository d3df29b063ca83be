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

#include "safebo/baselines.hpp"

#include <cmath>
#include <limits>

#include "safebo/acquisition.hpp"
#include "safebo/errors.hpp"

namespace safebo {

namespace {

SearchProblem make_problem(const SelectionContext& ctx, bool ignore_safety) {
  const GaussianPosterior& gp = *ctx.gp;
  const SafeRegion& region = *ctx.region;
  const int n = ctx.iteration;
  SearchProblem p;
  p.box = ctx.box;
  if (ignore_safety) {
    p.feasible = [](const PointSet& xs) { return std::vector<char>(static_cast<size_t>(xs.cols()), 1); };
  } else {
    p.feasible = [&gp, &region, n](const PointSet& xs) { return region.is_safe(gp, xs, n); };
  }
  p.anchors = region.archive();
  p.incumbent = incumbent(gp, region);
  return p;
}

Selection argmax_over(const PointSet& xs, const Vector& values, const std::vector<char>& allowed,
                      const std::string& component) {
  Eigen::Index best = -1;
  for (Eigen::Index i = 0; i < xs.cols(); ++i) {
    if (!allowed[static_cast<size_t>(i)]) continue;
    if (best < 0 || better(values[i], xs.col(i), values[best], xs.col(best))) best = i;
  }
  if (best < 0) throw ExplorationStallError("no admissible candidate for " + component);
  Selection s;
  s.x = xs.col(best);
  s.diagnostics.component = component;
  s.diagnostics.value = values[best];
  s.diagnostics.evaluations = xs.cols();
  return s;
}

}  // namespace

CandidateSet build_candidates(const SelectionContext& ctx) {
  const SearchProblem problem = make_problem(ctx, false);
  const SearchConfig& cfg = ctx.search;
  CandidateSet out;
  if (cfg.mode == SearchMode::kLine) {
    const LineSegment line = random_line(problem, derive_seed(ctx.seed, 12));
    const Box tbox = line.parameter_box();
    Feasibility tfeas = [&](const PointSet& t) { return problem.feasible(line.map(t)); };
    const std::vector<int> res{cfg.line_resolution};
    out.safe = line.map(feasible_probes(tbox, res, tfeas, {Vector::Zero(1)}, cfg.refine_steps));
    out.nodes = line.map(tbox.grid(res));
  } else {
    const std::vector<int> res = cfg.grid_resolution(ctx.box.dim());
    out.safe = feasible_probes(ctx.box, res, problem.feasible, problem.anchors, cfg.refine_steps);
    out.nodes = ctx.box.grid(res);
  }
  out.node_safe = problem.feasible(out.nodes);
  return out;
}

SafeOptSets safeopt_sets(const GaussianPosterior& gp, const CandidateSet& cands, double beta_f,
                         double beta_s, double lipschitz) {
  const ProbeCache f = gp.probe(Channel::kObjective, cands.safe);
  const ProbeCache s = gp.probe(Channel::kConstraint, cands.safe);
  const Vector sf = f.stddev();
  const Vector ss = s.stddev();
  const Eigen::Index m = cands.safe.cols();
  SafeOptSets out;
  out.maximizer.assign(static_cast<size_t>(m), 0);
  out.expander.assign(static_cast<size_t>(m), 0);
  const Vector lcb_f = f.mean - beta_f * sf;
  const Vector ucb_f = f.mean + beta_f * sf;
  const double best_lcb = lcb_f.maxCoeff();
  for (Eigen::Index i = 0; i < m; ++i) out.maximizer[static_cast<size_t>(i)] = ucb_f[i] >= best_lcb;

  std::vector<Eigen::Index> unsafe;
  for (size_t j = 0; j < cands.node_safe.size(); ++j) {
    if (!cands.node_safe[j]) unsafe.push_back(static_cast<Eigen::Index>(j));
  }
  if (unsafe.empty()) return out;
  PointSet u(cands.nodes.rows(), static_cast<Eigen::Index>(unsafe.size()));
  for (size_t j = 0; j < unsafe.size(); ++j) u.col(static_cast<Eigen::Index>(j)) = cands.nodes.col(unsafe[j]);
  const Vector ucb_s = s.mean + beta_s * ss;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double dist = std::sqrt((u.colwise() - cands.safe.col(i)).colwise().squaredNorm().minCoeff());
    out.expander[static_cast<size_t>(i)] = ucb_s[i] - lipschitz * dist >= 0.0;
  }
  return out;
}

Selection select_baseline(const StrategySpec& spec, const SelectionContext& ctx) {
  const GaussianPosterior& gp = *ctx.gp;
  const SafeRegion& region = *ctx.region;
  const int n = ctx.iteration;
  switch (spec.kind) {
    case StrategyKind::kUncertainty: {
      const CandidateSet c = build_candidates(ctx);
      const Vector sd = gp.probe(Channel::kConstraint, c.safe).stddev();
      return argmax_over(c.safe, sd, std::vector<char>(static_cast<size_t>(c.safe.cols()), 1),
                         "uncertainty");
    }
    case StrategyKind::kMesSafe:
    case StrategyKind::kMesUnconstrained: {
      const bool unconstrained = spec.kind == StrategyKind::kMesUnconstrained;
      MaxValueOptions opts = ctx.max_value;
      opts.restrict_to_safe = !unconstrained;
      const MaxValueSample ys = sample_max_value(gp, region, ctx.box, n, derive_seed(ctx.seed, 11), opts);
      PointSet xs;
      if (unconstrained) {
        const SearchProblem problem = make_problem(ctx, true);
        if (ctx.search.mode == SearchMode::kLine) {
          const LineSegment line = random_line(problem, derive_seed(ctx.seed, 12));
          xs = line.map(line.parameter_box().grid(ctx.search.line_resolution));
        } else {
          xs = ctx.box.grid(ctx.search.grid_resolution(ctx.box.dim()));
        }
      } else {
        xs = build_candidates(ctx).safe;
      }
      const ProbeCache f = gp.probe(Channel::kObjective, xs);
      const Vector nv = gp.noise(Channel::kObjective).variance(xs);
      Vector values(xs.cols());
      for (Eigen::Index i = 0; i < xs.cols(); ++i) {
        values[i] = alpha_mes_noisy(f.mean[i], std::sqrt(f.variance[i]), nv[i], ys.ystar);
      }
      Selection s = argmax_over(xs, values, std::vector<char>(static_cast<size_t>(xs.cols()), 1), "mes");
      s.diagnostics.alpha_mes = s.diagnostics.value;
      s.diagnostics.ystar = ys.ystar;
      return s;
    }
    case StrategyKind::kSafeOpt: {
      if (!(spec.lipschitz > 0.0)) throw ConfigError("safeopt needs a positive Lipschitz constant");
      const CandidateSet c = build_candidates(ctx);
      const SafeOptSets sets = safeopt_sets(gp, c, ctx.beta_objective, region.beta(n), spec.lipschitz);
      const Vector sf = gp.probe(Channel::kObjective, c.safe).stddev();
      const Vector ss = gp.probe(Channel::kConstraint, c.safe).stddev();
      const Vector width = sf.cwiseMax(ss);
      std::vector<char> allowed(sets.maximizer.size());
      for (size_t i = 0; i < allowed.size(); ++i) allowed[i] = sets.maximizer[i] || sets.expander[i];
      return argmax_over(c.safe, width, allowed, "safeopt");
    }
    default:
      throw ConfigError("strategy " + spec.name() + " is not a baseline");
  }
}

}  // namespace safebo
