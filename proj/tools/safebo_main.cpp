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
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "safebo/benchmarks.hpp"
#include "safebo/errors.hpp"
#include "safebo/harness.hpp"
#include "safebo/prior_sampling.hpp"
#include "safebo/theory.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

struct RunArgs {
  std::string config;
  std::string output_dir;
  int threads = 0;
};

struct TheoryArgs {
  std::string bound = "exploration";
  double lengthscale = 0.2;
  double outputscale = 1.0;
  double noise = 0.05;
  double beta = 1.0;
  double eps = 1.0;
  double phi = 10.0;
  double mean_bound = 0.0;
  int resolution = 201;
  int n_max = 2000;
  std::string expansion_out;
  std::uint64_t seed = 0;
};

int run_command(const RunArgs& args) {
  safebo::RunConfig cfg = safebo::load_run_config(args.config);
  if (!args.output_dir.empty()) cfg.output_dir = args.output_dir;
  if (args.threads > 0) cfg.threads = args.threads;
  const safebo::Campaign campaign = safebo::run_campaign(cfg);
  safebo::write_campaign(cfg, campaign);
  for (const safebo::Aggregate& a : campaign.aggregates) {
    std::printf("%-24s runs=%d final_regret=%.6g violations=%.4f+-%.4f\n", a.strategy.c_str(),
                a.runs, a.final_regret_mean, a.violation_mean, a.violation_std);
  }
  for (const safebo::RunRecord& r : campaign.records) {
    if (!r.ok) std::fprintf(stderr, "%s seed %llu failed: %s\n", r.strategy.c_str(),
                            static_cast<unsigned long long>(r.seed), r.error.c_str());
  }
  std::printf("output: %s\n", safebo::resolve_output_dir(cfg.output_dir).c_str());
  return campaign.failures > 0 ? kExitPartial : kExitOk;
}

int theory_command(const TheoryArgs& a) {
  using namespace safebo;
  const KernelSpec kernel = KernelSpec::rbf(1, a.lengthscale, a.outputscale);
  const Box box = Box::cube(1, 0.0, 1.0);
  const PointSet grid = box.grid(a.resolution);
  const std::vector<double> gamma = empirical_gamma(kernel, grid, a.noise, a.n_max);
  const BetaSchedule beta = BetaSchedule::constant(a.beta);
  const double M = a.mean_bound > 0.0 ? a.mean_bound : default_mean_bound(a.beta);

  std::function<double(double)> g;
  double C = 0.0;
  if (a.bound == "exploration") {
    g = [&](double x) { return eta(x, M, a.noise); };
    C = capacity_constant_exploration(a.noise);
  } else if (a.bound == "combined") {
    g = [&](double x) { return b_function(x, M, a.noise, a.phi); };
    C = capacity_constant_combined(a.noise, a.phi, a.beta);
  } else {
    throw ConfigError("unknown bound '" + a.bound + "'");
  }
  const NEpsilonResult res = n_epsilon(a.eps, beta, gamma, g, C, a.n_max);
  std::printf("N,gamma,beta,condition,log_crossing,satisfied\n");
  for (const NEpsilonRow& r : res.rows) {
    std::printf("%d,%.17g,%.17g,%.17g,%.17g,%d\n", r.n, r.gamma, r.beta, r.condition,
                r.log_crossing, r.satisfied ? 1 : 0);
  }
  if (res.n) {
    std::fprintf(stderr, "N_eps = %d\n", *res.n);
  } else {
    std::fprintf(stderr, "N_eps not reached within %d iterations\n", a.n_max);
  }

  if (!a.expansion_out.empty()) {
    // In-model instance: a prior draw shifted so the grid centre is safe.
    Vector s = sample_prior_function(kernel, grid, a.seed);
    const Eigen::Index centre = grid.cols() / 2;
    s.array() += std::max(0.0, 0.5 - s[centre]);
    ExpansionProblem p;
    p.kernel = kernel;
    p.grid = grid;
    p.seed_index = centre;
    p.noise_variance = a.noise;
    p.constraint = [&](const Vector& x) {
      const double t = (x[0] - box.lower[0]) / box.width()[0] * (grid.cols() - 1);
      return s[static_cast<Eigen::Index>(std::lround(t))];
    };
    const ExpansionState st = expansion_fixed_point(p, a.eps, a.beta, a.seed);
    nlohmann::json j;
    j["grid"] = std::vector<double>(grid.data(), grid.data() + grid.size());
    j["constraint"] = std::vector<double>(s.data(), s.data() + s.size());
    j["eps"] = st.eps;
    j["rounds"] = st.rounds;
    j["conditionings"] = st.conditionings;
    nlohmann::json history = nlohmann::json::array();
    for (const auto& h : st.history) {
      std::vector<int> row(h.begin(), h.end());
      history.push_back(row);
    }
    j["history"] = history;
    std::ofstream out(a.expansion_out);
    if (!out) throw Error("cannot write '" + a.expansion_out + "'");
    out << j.dump() << "\n";
  }
  return kExitOk;
}

int bench_list() {
  for (const std::string& name : safebo::benchmark_names()) {
    const safebo::BenchmarkProblem p = safebo::make_benchmark(name, 0);
    std::printf("%-18s dim=%d fstar=%.6g (%s)\n", name.c_str(), p.dim(), p.fstar,
                p.fstar_method.c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Safe Bayesian optimization experiments"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run a seeded campaign from a JSON config");
  run->add_option("--config", run_args.config, "Campaign config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--output-dir", run_args.output_dir, "Override the configured output directory");
  run->add_option("--threads", run_args.threads, "Worker threads");

  TheoryArgs theory_args;
  CLI::App* theory = app.add_subcommand("theory", "Iteration bound table and expansion snapshots");
  theory->add_option("--bound", theory_args.bound, "exploration or combined");
  theory->add_option("--lengthscale", theory_args.lengthscale);
  theory->add_option("--outputscale", theory_args.outputscale);
  theory->add_option("--noise", theory_args.noise, "Noise variance");
  theory->add_option("--beta", theory_args.beta, "Constant confidence multiplier");
  theory->add_option("--eps", theory_args.eps);
  theory->add_option("--phi", theory_args.phi, "Max-value threshold for the combined bound");
  theory->add_option("--mean-bound", theory_args.mean_bound, "Mean bound M (default 2 beta)");
  theory->add_option("--resolution", theory_args.resolution, "Nodes of the 1-D unit grid");
  theory->add_option("--n-max", theory_args.n_max);
  theory->add_option("--expansion-json", theory_args.expansion_out,
                     "Write expansion-state snapshots of a sampled instance");
  theory->add_option("--seed", theory_args.seed);

  CLI::App* bench = app.add_subcommand("bench", "Benchmark registry");
  bench->add_subcommand("list", "List available benchmarks");
  bench->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return run_command(run_args);
    if (*theory) return theory_command(theory_args);
    if (*bench) return bench_list();
  } catch (const safebo::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitPartial;
  }
  return kExitOk;
}
