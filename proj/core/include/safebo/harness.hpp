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

#ifndef SAFEBO_HARNESS_HPP_
#define SAFEBO_HARNESS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "safebo/benchmarks.hpp"
#include "safebo/gp.hpp"
#include "safebo/inner_opt.hpp"
#include "safebo/safe_set.hpp"
#include "safebo/strategy.hpp"

namespace safebo {

struct BetaConfig {
  enum class Mode { kConstant, kTheoretical };
  Mode mode = Mode::kConstant;
  // Constant value; unset means the benchmark default.
  std::optional<double> value;
  // Theoretical schedule; B may differ per channel.
  double rkhs_bound_objective = 2.0;
  double rkhs_bound_constraint = 2.0;
  double subgaussian = 1.0;
  double delta = 0.1;
};

struct KernelOverride {
  std::optional<double> lengthscale;
  std::optional<double> outputscale;
  std::optional<double> noise_variance;
};

struct RunConfig {
  std::string benchmark;
  std::vector<StrategySpec> strategies;
  int iterations = 1;
  std::vector<std::uint64_t> seeds;
  BetaConfig beta;
  KernelOverride objective_override;
  KernelOverride constraint_override;
  std::optional<SearchConfig> search;
  double mes_weight = 1.0;
  int max_value_candidates = 1000;
  // Observe only the constraint channel (exploration tasks).
  bool constraint_only = false;
  // Certify the search-grid nodes that pass the lower-bound test each
  // iteration (grid mode), making grid membership monotone.
  bool certify_grid = true;
  std::string output_dir;
  int threads = 1;

  void validate() const;
};

// Parses the JSON campaign configuration; throws ConfigError.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

struct IterationRow {
  int n = 0;
  Vector x;
  std::string component;
  double alpha_ise = 0.0;
  double alpha_mes = 0.0;
  double yf = 0.0;
  double ys = 0.0;
  double f_true = 0.0;
  double s_true = 0.0;
  bool violation = false;
  double regret = 0.0;
  bool safe_at_selection = true;
  size_t archive_size = 0;
};

struct RunRecord {
  std::string benchmark;
  std::string strategy;
  std::uint64_t seed = 0;
  std::vector<IterationRow> rows;
  double fstar = 0.0;
  double final_regret = 0.0;
  double violation_fraction = 0.0;
  double wall_seconds = 0.0;
  bool ok = true;
  std::string error;
  // Membership of the safe set never shrank (archive and search grid).
  bool monotone = true;
  std::shared_ptr<const GaussianPosterior> posterior;
  std::shared_ptr<const SafeRegion> region;
};

// The posterior/region configuration a run would use for `problem`.
GaussianPosterior initial_posterior(const BenchmarkProblem& problem, const RunConfig& cfg);
SafeRegion initial_region(const BenchmarkProblem& problem, const RunConfig& cfg);
SearchConfig effective_search(const BenchmarkProblem& problem, const RunConfig& cfg);

// One seeded run; errors are captured in the record.
RunRecord run_single(const BenchmarkProblem& problem, const StrategySpec& spec,
                     const RunConfig& cfg, std::uint64_t seed);

struct Aggregate {
  std::string strategy;
  std::vector<double> mean_regret;
  std::vector<double> stderr_regret;
  double violation_mean = 0.0;
  double violation_std = 0.0;
  double final_regret_mean = 0.0;
  int runs = 0;
};

// Throws PreconditionError if records differ in length.
Aggregate aggregate(const std::vector<RunRecord>& records);

struct Campaign {
  std::vector<RunRecord> records;
  std::vector<Aggregate> aggregates;
  int failures = 0;
};

Campaign run_campaign(const RunConfig& cfg);

// Frozen CSV layout: n,x0..x{d-1},component,alpha_ise,alpha_mes,yf,ys,
// f_true,s_true,violation,regret.
std::string csv_header(int dim);
std::string to_csv(const RunRecord& record);
std::string summary_json(const RunConfig& cfg, const Campaign& campaign);
// Writes one CSV per (strategy, seed) and summary.json into cfg.output_dir.
void write_campaign(const RunConfig& cfg, const Campaign& campaign);

// Output directory after applying the SAFEBO_OUTPUT_DIR override.
std::string resolve_output_dir(const std::string& configured);

}  // namespace safebo

#endif  // SAFEBO_HARNESS_HPP_
