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

#ifndef SAFEBO_BASELINES_HPP_
#define SAFEBO_BASELINES_HPP_

#include "safebo/strategy.hpp"

namespace safebo {

// Comparison strategies: uncertainty, mes_safe, mes_unconstrained and the
// grid SafeOpt variant whose safe set is the GP lower confidence bound.
Selection select_baseline(const StrategySpec& spec, const SelectionContext& ctx);

// Candidate sets shared by the baselines.
struct CandidateSet {
  PointSet safe;    // feasible probes (grid nodes, anchors, boundary refinements)
  PointSet nodes;   // every grid or line node
  std::vector<char> node_safe;
};

CandidateSet build_candidates(const SelectionContext& ctx);

// SafeOpt sets over the safe candidates.
struct SafeOptSets {
  std::vector<char> maximizer;
  std::vector<char> expander;
};

SafeOptSets safeopt_sets(const GaussianPosterior& gp, const CandidateSet& cands, double beta_f,
                         double beta_s, double lipschitz);

}  // namespace safebo

#endif  // SAFEBO_BASELINES_HPP_
