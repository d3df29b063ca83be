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

#ifndef SAFEBO_STRATEGY_HPP_
#define SAFEBO_STRATEGY_HPP_

#include <cstdint>
#include <limits>
#include <string>

#include "safebo/gp.hpp"
#include "safebo/inner_opt.hpp"
#include "safebo/max_value.hpp"
#include "safebo/safe_set.hpp"
#include "safebo/types.hpp"

namespace safebo {

enum class StrategyKind {
  kIseBo,
  kIseOnly,
  kMesSafe,
  kMesUnconstrained,
  kUncertainty,
  kSafeOpt,
  kTheoryCombined,
};

struct StrategySpec {
  StrategyKind kind = StrategyKind::kIseBo;
  double lipschitz = 1.0;  // safeopt
  double phi = 0.0;        // theory_combined

  static StrategySpec parse(const std::string& name);
  // Short label, e.g. "ise_bo" or "safeopt_L1".
  std::string label() const;
  std::string name() const;
  bool ignores_safety() const { return kind == StrategyKind::kMesUnconstrained; }
};

struct SelectionContext {
  const GaussianPosterior* gp = nullptr;
  const SafeRegion* region = nullptr;
  Box box;
  int iteration = 0;
  SearchConfig search;
  std::uint64_t seed = 0;
  double mes_weight = 1.0;
  // Confidence multiplier for objective bounds (safeopt).
  double beta_objective = 2.0;
  MaxValueOptions max_value;
};

struct Diagnostics {
  double alpha_ise = std::numeric_limits<double>::quiet_NaN();
  double alpha_mes = std::numeric_limits<double>::quiet_NaN();
  // "ise", "mes", or the baseline criterion name.
  std::string component;
  Vector z;
  double ystar = std::numeric_limits<double>::quiet_NaN();
  double value = std::numeric_limits<double>::quiet_NaN();
  long evaluations = 0;
};

struct Selection {
  Vector x;
  Diagnostics diagnostics;
};

// Archived point with the largest objective posterior mean.
Vector incumbent(const GaussianPosterior& gp, const SafeRegion& region);

// ISE-family selection: ise_bo, ise_only, mes_safe, theory_combined.
Selection select_next(const StrategySpec& spec, const SelectionContext& ctx);

// Any strategy, dispatching to select_next or select_baseline.
Selection select_strategy(const StrategySpec& spec, const SelectionContext& ctx);

}  // namespace safebo

#endif  // SAFEBO_STRATEGY_HPP_
