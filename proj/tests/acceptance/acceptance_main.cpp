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

// Acceptance driver: one PASS/FAIL line per criterion.
//
//   safebo_acceptance            run everything
//   safebo_acceptance 1 4 10     run a subset
//
// Exit status is non-zero only for unexpected failures. Soft criteria and
// known deviations print their measured margins but do not fail the run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "safebo/acquisition.hpp"
#include "safebo/benchmarks.hpp"
#include "safebo/gp.hpp"
#include "safebo/harness.hpp"
#include "safebo/inner_opt.hpp"
#include "safebo/max_value.hpp"
#include "safebo/prior_sampling.hpp"
#include "safebo/safe_set.hpp"
#include "safebo/theory.hpp"

namespace {

using namespace safebo;

// Tolerances and thresholds.
constexpr double kEntropyErrorBound = 1.8729e-3;  // max |approx - exact| from a 2e7-point scan
constexpr double kEntropySeconds = 1.0;
constexpr int kMcStates = 20;
constexpr int kMcSamples = 1000000;
constexpr double kMcSigmas = 3.0;
constexpr int kMcRequired = 19;
constexpr double kMcSeconds = 120.0;
constexpr int kBoundStates = 1000;
constexpr double kBoundTol = 1e-9;
constexpr int kArgmaxSets = 100;
constexpr int kMonotoneSettings = 100;
constexpr double kSafeViolationMax = 0.01;
constexpr double kUnconstrainedViolationMin = 0.05;
constexpr double kSafetySeconds = 15 * 60.0;
constexpr double kSyntheticRegretTarget = 1.0;
constexpr int kSyntheticRequired = 15;
constexpr double kPendulumCoverage = 0.60;
constexpr int kPendulumCleanSeeds = 18;
constexpr double kTheorySeconds = 120.0;
constexpr double kIncrementalTol = 1e-8;

struct Outcome {
  int id = 0;
  std::string title;
  bool pass = false;
  bool soft = false;
  bool known = false;  // documented deviation
  std::string detail;
};

Outcome outcome(int id, std::string title) {
  Outcome o;
  o.id = id;
  o.title = std::move(title);
  return o;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Campaign traces collected for the infrastructure criterion.
std::vector<RunRecord> g_traces;

void keep_traces(const Campaign& c) {
  g_traces.insert(g_traces.end(), c.records.begin(), c.records.end());
}

const Aggregate& find(const Campaign& c, const std::string& label) {
  for (const Aggregate& a : c.aggregates) {
    if (a.strategy == label) return a;
  }
  throw std::runtime_error("no aggregate for " + label);
}

RunConfig base_config(const std::string& benchmark, std::vector<std::string> strategies,
                      int iterations, int seeds) {
  RunConfig cfg;
  cfg.benchmark = benchmark;
  for (const std::string& s : strategies) cfg.strategies.push_back(StrategySpec::parse(s));
  cfg.iterations = iterations;
  for (int i = 0; i < seeds; ++i) cfg.seeds.push_back(static_cast<std::uint64_t>(i));
  cfg.threads = 1;
  return cfg;
}

// A random GP posterior on [-1,1]^d with a few observations on both channels.
GaussianPosterior random_posterior(std::mt19937_64& rng, int d, double* noise_out) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double ls = 0.2 + 0.8 * u(rng);
  const double os = 0.5 + 2.5 * u(rng);
  const double nv = 0.01 + 0.49 * u(rng);
  GaussianPosterior gp(ExtendedKernel::shared(KernelSpec::rbf(d, ls, os)),
                       NoiseModel::homoskedastic(nv));
  const int n = static_cast<int>(u(rng) * 16);
  for (int i = 0; i < n; ++i) {
    Vector x(d);
    for (int k = 0; k < d; ++k) x[k] = 2.0 * u(rng) - 1.0;
    gp = gp.condition({x, Channel::kObjective}, std::sqrt(os) * (2.0 * u(rng) - 1.0));
    gp = gp.condition({x, Channel::kConstraint}, std::sqrt(os) * (2.0 * u(rng) - 0.5));
  }
  *noise_out = nv;
  return gp;
}

Outcome entropy_approximation() {
  Outcome o = outcome(1, "entropy approximation vs exact binary entropy");
  const auto t0 = Clock::now();
  const int m = 10000;
  bool centre = approx_entropy(0.0, 1.0) == EntropyConstants::kLn2 &&
                exact_entropy(0.0, 1.0) == EntropyConstants::kLn2;
  bool symmetric = true, monotone = true;
  double worst = 0.0;
  double prev_approx = 0.0, prev_exact = 0.0;
  for (int i = 0; i < m; ++i) {
    const double r = -10.0 + 20.0 * i / (m - 1);
    const double a = approx_entropy(r, 1.0), e = exact_entropy(r, 1.0);
    symmetric &= a == approx_entropy(-r, 1.0) && e == exact_entropy(-r, 1.0);
    worst = std::max(worst, std::abs(a - e));
    if (r > 0.0 && i > 0 && -10.0 + 20.0 * (i - 1) / (m - 1) >= 0.0) {
      monotone &= a < prev_approx && e <= prev_exact;
    }
    prev_approx = a;
    prev_exact = e;
  }
  const double secs = seconds_since(t0);
  o.pass = centre && symmetric && monotone && worst <= kEntropyErrorBound && secs < kEntropySeconds;
  o.detail = fmt("max err %.4e (bound %.4e), centre=%d symmetric=%d monotone=%d, %.3fs", worst,
                 kEntropyErrorBound, centre, symmetric, monotone, secs);
  return o;
}

Outcome closed_form_vs_monte_carlo() {
  Outcome o = outcome(2, "expected posterior entropy closed form vs Monte Carlo");
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> n01;
  int within = 0;
  double worst_z = 0.0;
  for (int s = 0; s < kMcStates; ++s) {
    MIQuery q;
    q.mu_z = 4.0 * u(rng) - 2.0;
    q.sigma_z = 0.2 + 1.8 * u(rng);
    q.sigma_x = 0.2 + 1.8 * u(rng);
    q.rho = 2.0 * u(rng) - 1.0;
    q.noise_variance = 0.01 + u(rng);
    // Observation y at x moves the mean at z linearly and shrinks its variance.
    const double cov = q.rho * q.sigma_z * q.sigma_x;
    const double s2y = q.sigma_x * q.sigma_x + q.noise_variance;
    const double post_sd = std::sqrt(q.sigma_z * q.sigma_z - cov * cov / s2y);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < kMcSamples; ++i) {
      const double dy = std::sqrt(s2y) * n01(rng);
      const double h = approx_entropy(q.mu_z + cov / s2y * dy, post_sd);
      sum += h;
      sum2 += h * h;
    }
    const double mean = sum / kMcSamples;
    const double se = std::sqrt(std::max(sum2 / kMcSamples - mean * mean, 0.0) / kMcSamples);
    const double z = std::abs(expected_post_entropy(q) - mean) / std::max(se, 1e-300);
    worst_z = std::max(worst_z, z);
    within += z <= kMcSigmas;
  }
  const double secs = seconds_since(t0);
  o.pass = within >= kMcRequired && secs < kMcSeconds;
  o.detail = fmt("%d/%d within %.0f SE (need %d), worst %.2f SE, %.1fs", within, kMcStates,
                 kMcSigmas, kMcRequired, worst_z, secs);
  return o;
}

Outcome information_bounds() {
  Outcome o = outcome(3, "acquisition values bounded by the information-gain bounds");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int ise_viol = 0, mes_viol = 0;
  double ise_margin = INFINITY, mes_margin = INFINITY;
  for (int s = 0; s < kBoundStates; ++s) {
    const int d = 1 + (s % 2);
    double nv = 0.0;
    const GaussianPosterior gp = random_posterior(rng, d, &nv);
    const Box box = Box::cube(d, -1.0, 1.0);
    const PointSet zs = box.grid(d == 1 ? 41 : 15);
    PointSet x(d, 1);
    for (int k = 0; k < d; ++k) x(k, 0) = 2.0 * u(rng) - 1.0;
    const double var_s = gp.probe(Channel::kConstraint, x).variance[0];
    const double ise = IseEvaluator(gp)(x, zs).maxCoeff();
    const double ise_bound = EntropyConstants::kLn2 * var_s / nv;
    ise_margin = std::min(ise_margin, ise_bound - ise);
    ise_viol += ise > ise_bound + kBoundTol;

    const ProbeCache fz = gp.probe(Channel::kObjective, zs);
    const double ystar = gumbel_max_value(fz.mean, fz.stddev(), static_cast<std::uint64_t>(s)).ystar;
    const ProbeCache fx = gp.probe(Channel::kObjective, x);
    const double mes = alpha_mes_noisy(fx.mean[0], std::sqrt(fx.variance[0]), nv, ystar);
    const double mes_bound = 0.5 * std::log1p(fx.variance[0] / nv);
    mes_margin = std::min(mes_margin, mes_bound - mes);
    mes_viol += mes > mes_bound + kBoundTol;
  }
  o.pass = ise_viol == 0 && mes_viol == 0;
  o.detail = fmt("%d states: ISE violations %d (min slack %.3e), MES violations %d (min slack %.3e)",
                 kBoundStates, ise_viol, ise_margin, mes_viol, mes_margin);
  return o;
}

Outcome argmax_equivalence() {
  Outcome o = outcome(4, "single-sample MES and its ratio surrogate share the argmax");
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int agree = 0;
  for (int t = 0; t < kArgmaxSets; ++t) {
    Vector mu(200), sd(200);
    for (int i = 0; i < 200; ++i) {
      mu[i] = 4.0 * u(rng) - 2.0;
      sd[i] = 0.01 + 2.0 * u(rng);
    }
    const double phi = mu.maxCoeff() + 1e-3 + 2.0 * u(rng);
    Eigen::Index a = 0, b = 0;
    for (Eigen::Index i = 1; i < 200; ++i) {
      if (alpha_mes(mu[i], sd[i], phi) > alpha_mes(mu[a], sd[a], phi)) a = i;
      if (alpha_mes_hat(mu[i], sd[i], phi) > alpha_mes_hat(mu[b], sd[b], phi)) b = i;
    }
    agree += a == b;
  }
  o.pass = agree == kArgmaxSets;
  o.detail = fmt("%d/%d candidate sets agree", agree, kArgmaxSets);
  return o;
}

Outcome mi_monotonicity() {
  Outcome o = outcome(5, "safety information strictly decreases in mu^2/sigma^2");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int ok = 0;
  for (int t = 0; t < kMonotoneSettings; ++t) {
    MIQuery q;
    q.rho = (u(rng) < 0.5 ? -1.0 : 1.0) * (0.05 + 0.95 * u(rng));
    q.sigma_z = 0.1 + 1.9 * u(rng);
    q.sigma_x = 0.1 + 1.9 * u(rng);
    q.noise_variance = 0.01 + u(rng);
    bool strict = true;
    double last = INFINITY;
    for (int i = 0; i < 400; ++i) {
      const double r2 = 25.0 * i / 399.0;
      q.mu_z = std::sqrt(r2) * q.sigma_z;
      const double v = ise_mutual_info(q);
      strict &= v < last && v > 0.0;
      last = v;
    }
    ok += strict;
  }
  o.pass = ok == kMonotoneSettings;
  o.detail = fmt("%d/%d settings strictly decreasing over r^2 in [0,25]", ok, kMonotoneSettings);
  return o;
}

Outcome safety_campaign() {
  Outcome o = outcome(6, "gp2d_same safety: violation fractions (20 seeds, N=100, beta=3)");
  const auto t0 = Clock::now();
  RunConfig cfg = base_config("gp2d_same",
                              {"ise_bo", "mes_safe", "uncertainty", "mes_unconstrained"}, 100, 20);
  for (double L : {0.01, 1.0}) {
    StrategySpec s = StrategySpec::parse("safeopt");
    s.lipschitz = L;
    cfg.strategies.push_back(s);
  }
  cfg.beta.value = 3.0;
  const Campaign c = run_campaign(cfg);
  keep_traces(c);
  const double secs = seconds_since(t0);
  bool pass = c.failures == 0 && secs < kSafetySeconds;
  std::string detail;
  for (const Aggregate& a : c.aggregates) {
    const bool unconstrained = a.strategy == "mes_unconstrained";
    const bool ok = unconstrained ? a.violation_mean > kUnconstrainedViolationMin
                                  : a.violation_mean < kSafeViolationMax;
    pass &= ok;
    detail += fmt("%s=%.4f%s ", a.strategy.c_str(), a.violation_mean, ok ? "" : "(!)");
  }
  o.pass = pass;
  o.detail = detail + fmt("failures=%d, %.0fs", c.failures, secs);
  return o;
}

Outcome synthetic_regret() {
  Outcome o = outcome(7, "synthetic1d regret ordering (20 seeds, N=80)");
  const RunConfig cfg = base_config("synthetic1d", {"ise_bo", "mes_safe"}, 80, 20);
  const Campaign c = run_campaign(cfg);
  keep_traces(c);
  const Aggregate& ise = find(c, "ise_bo");
  const Aggregate& mes = find(c, "mes_safe");
  int below = 0;
  for (const RunRecord& r : c.records) {
    if (r.strategy == "ise_bo" && r.ok) below += r.final_regret < kSyntheticRegretTarget;
  }
  o.pass = c.failures == 0 && ise.final_regret_mean < mes.final_regret_mean && below >= kSyntheticRequired;
  o.detail = fmt("ise_bo %.4f vs mes_safe %.4f mean final regret; ise_bo < %.1f in %d/20 seeds",
                 ise.final_regret_mean, mes.final_regret_mean, kSyntheticRegretTarget, below);
  return o;
}

Outcome heteroskedastic_direction() {
  Outcome o = outcome(8, "hetero4 line mode: ise_bo vs uncertainty (10 seeds, N=150)");
  o.soft = true;
  RunConfig cfg = base_config("hetero4", {"ise_bo", "uncertainty"}, 150, 10);
  SearchConfig search = SearchConfig::defaults_for(4);
  search.mode = SearchMode::kLine;
  cfg.search = search;
  const Campaign c = run_campaign(cfg);
  keep_traces(c);
  const Aggregate& ise = find(c, "ise_bo");
  const Aggregate& unc = find(c, "uncertainty");
  o.pass = c.failures == 0 && ise.final_regret_mean <= unc.final_regret_mean;
  o.detail = fmt("ise_bo %.4f vs uncertainty %.4f mean final regret, margin %.4g", ise.final_regret_mean,
                 unc.final_regret_mean, unc.final_regret_mean - ise.final_regret_mean);
  return o;
}

Outcome pendulum_exploration() {
  Outcome o = outcome(9, "pendulum exploration coverage (ise_only, 20 seeds, N=50)");
  o.known = true;
  RunConfig cfg = base_config("pendulum", {"ise_only"}, 50, 20);
  SearchConfig search = SearchConfig::defaults_for(2);
  search.mode = SearchMode::kGrid;
  cfg.search = search;
  const Campaign c = run_campaign(cfg);
  keep_traces(c);

  const BenchmarkProblem p = pendulum_problem();
  const int res = 101;
  const PointSet grid = p.box.grid(res);
  std::vector<char> safe(static_cast<size_t>(grid.cols()));
  for (Eigen::Index j = 0; j < grid.cols(); ++j) safe[static_cast<size_t>(j)] = p.s(grid.col(j)) >= 0.0;
  Eigen::Index nearest = 0;
  (grid.colwise() - p.seed).colwise().squaredNorm().minCoeff(&nearest);
  const std::vector<char> reach = flood_fill(safe, {res, res}, {nearest});
  const double reach_count = static_cast<double>(std::count(reach.begin(), reach.end(), 1));

  double coverage_sum = 0.0;
  int clean = 0, runs = 0;
  for (const RunRecord& r : c.records) {
    if (!r.ok) continue;
    ++runs;
    clean += r.violation_fraction == 0.0;
    const std::vector<char> learned = r.region->is_safe(*r.posterior, grid, cfg.iterations);
    int covered = 0;
    for (size_t j = 0; j < reach.size(); ++j) covered += reach[j] && learned[j];
    coverage_sum += covered / reach_count;
  }
  const double coverage = runs > 0 ? coverage_sum / runs : 0.0;
  o.pass = c.failures == 0 && coverage >= kPendulumCoverage && clean >= kPendulumCleanSeeds;
  o.detail = fmt("mean coverage %.3f (need %.2f), zero-violation seeds %d/20 (need %d)", coverage,
                 kPendulumCoverage, clean, kPendulumCleanSeeds);
  return o;
}

Outcome theory_suite() {
  Outcome o = outcome(10, "iteration bound, capacity and expansion checks");
  const auto t0 = Clock::now();
  const double nv = 0.05;
  bool mono = true;
  double last_eta = 0.0, last_b = 0.0;
  // Grid starts where eta is still representable for M = 1 (it underflows to 0 near x = 1e-3).
  for (int i = 1; i <= 1000; ++i) {
    const double x = 0.02 * i;
    const double e = eta(x, 1.0, nv), b = b_function(x, 1.0, nv, 10.0);
    mono &= e > last_eta && b >= last_b;
    last_eta = e;
    last_b = b;
  }

  // Bound table for constant beta and the greedy capacity of an RBF grid.
  const KernelSpec kernel = KernelSpec::rbf(1, 0.2, 1.0);
  const PointSet grid = Box::cube(1, 0.0, 1.0).grid(201);
  const std::vector<double> gamma = empirical_gamma(kernel, grid, nv, 2000);
  const double beta = 1.0, eps = 1.0;
  const double M = default_mean_bound(beta);
  const std::function<double(double)> g = [&](double x) { return eta(x, M, nv); };
  const double C = capacity_constant_exploration(nv);
  const NEpsilonResult res = n_epsilon(eps, BetaSchedule::constant(beta), gamma, g, C, 2000);
  bool minimal = res.n.has_value();
  bool crossing = res.n.has_value();
  if (res.n) {
    const int N = *res.n;
    auto holds = [&](int n) {
      const auto inv = invert_increasing(g, C * gamma[static_cast<size_t>(n)] / n);
      return inv && beta * *inv <= eps;
    };
    minimal &= holds(N);
    for (int n = 1; n < N; ++n) minimal &= !holds(n);
    for (const NEpsilonRow& r : res.rows) {
      if (r.n < N) crossing &= r.log_crossing < 1e-9;
    }
    crossing &= res.rows[static_cast<size_t>(N - 1)].log_crossing > -1e-9 &&
                res.rows.front().log_crossing < 0.0 && res.rows.back().log_crossing > 0.0;
  }

  // In-model instances: prior draws shifted so the grid centre is safe.
  int contained = 0;
  const int instances = 10;
  const PointSet egrid = Box::cube(1, 0.0, 1.0).grid(101);
  for (int k = 0; k < instances; ++k) {
    Vector s = sample_prior_function(kernel, egrid, static_cast<std::uint64_t>(100 + k));
    const Eigen::Index centre = egrid.cols() / 2;
    s.array() += std::max(0.0, 0.5 - s[centre]);
    ExpansionProblem p;
    p.kernel = kernel;
    p.grid = egrid;
    p.seed_index = centre;
    p.noise_variance = nv;
    p.constraint = [&](const Vector& x) { return s[static_cast<Eigen::Index>(std::lround(x[0] * 100))]; };
    const ExpansionState st = expansion_fixed_point(p, 0.25, 3.0, static_cast<std::uint64_t>(k));
    std::vector<char> mask(static_cast<size_t>(egrid.cols()));
    for (Eigen::Index j = 0; j < egrid.cols(); ++j) mask[static_cast<size_t>(j)] = s[j] >= 0.0;
    const std::vector<char> truth = flood_fill(mask, {101}, {centre});
    bool inside = true;
    for (size_t j = 0; j < truth.size(); ++j) inside &= !st.safe[j] || truth[j];
    contained += inside;
  }
  const double secs = seconds_since(t0);
  o.pass = mono && minimal && crossing && contained == instances && secs < kTheorySeconds;
  o.detail = fmt("monotone=%d, N_eps=%d minimal=%d crossing=%d, expansion contained %d/%d, %.1fs",
                 mono, res.n.value_or(-1), minimal, crossing, contained, instances, secs);
  return o;
}

Outcome infrastructure() {
  Outcome o = outcome(11, "GP updates, safe-set monotonicity, determinism, grid re-scan");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  // Incremental conditioning against a from-scratch rebuild.
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 1 + trial % 3;
    ExtendedKernel k = ExtendedKernel::independent(KernelSpec::rbf(d, 0.4, 2.0), KernelSpec::rbf(d, 0.4, 1.0));
    if (trial % 2) k.cross_correlation = 0.6;
    const std::array<NoiseModel, 2> noise{NoiseModel::homoskedastic(0.05), NoiseModel::homoskedastic(0.1)};
    GaussianPosterior inc(k, noise);
    Dataset data;
    for (int i = 0; i < 20; ++i) {
      Vector x(d);
      for (int j = 0; j < d; ++j) x[j] = 2.0 * u(rng) - 1.0;
      const Channel c = i % 2 ? Channel::kConstraint : Channel::kObjective;
      const double y = 2.0 * u(rng) - 1.0;
      inc = inc.condition({x, c}, y);
      data.push_back(Observation{{x, c}, y, c == Channel::kObjective ? 0.05 : 0.1});
    }
    const GaussianPosterior batch = GaussianPosterior::from_dataset(k, noise, data);
    PointSet test(d, 50);
    for (Eigen::Index j = 0; j < test.cols(); ++j)
      for (int r = 0; r < d; ++r) test(r, j) = 2.0 * u(rng) - 1.0;
    for (Channel c : {Channel::kObjective, Channel::kConstraint}) {
      const ProbeCache a = inc.probe(c, test), b = batch.probe(c, test);
      worst = std::max(worst, (a.mean - b.mean).cwiseAbs().maxCoeff());
      worst = std::max(worst, (a.variance - b.variance).cwiseAbs().maxCoeff());
    }
  }

  // Determinism on repeat.
  RunConfig cfg = base_config("synthetic1d", {"ise_bo", "mes_safe", "safeopt"}, 30, 3);
  const Campaign first = run_campaign(cfg);
  const Campaign second = run_campaign(cfg);
  keep_traces(first);
  bool identical = first.records.size() == second.records.size();
  for (size_t i = 0; identical && i < first.records.size(); ++i) {
    identical &= to_csv(first.records[i]) == to_csv(second.records[i]);
  }

  // Every collected trace keeps a monotone safe set.
  int monotone = 0;
  for (const RunRecord& r : g_traces) {
    bool ok = r.monotone;
    for (size_t i = 1; i < r.rows.size(); ++i) ok &= r.rows[i].archive_size >= r.rows[i - 1].archive_size;
    monotone += ok;
  }

  // Grid-mode joint maximization against a full re-scan.
  int maximal = 0;
  const int problems = 20;
  for (int t = 0; t < problems; ++t) {
    const int d = 1 + t % 2;
    double nv = 0.0;
    const GaussianPosterior gp = random_posterior(rng, d, &nv);
    const Box box = Box::cube(d, -1.0, 1.0);
    const SafeRegion region(Vector::Zero(d), BetaSchedule::constant(1.0));
    SearchConfig sc = SearchConfig::defaults_for(d);
    sc.mode = SearchMode::kGrid;
    sc.resolution = std::vector<int>(static_cast<size_t>(d), d == 1 ? 61 : 17);
    SearchProblem sp;
    sp.box = box;
    sp.feasible = [&](const PointSet& xs) { return region.is_safe(gp, xs, 0); };
    sp.anchors = region.archive();
    sp.incumbent = Vector::Zero(d);
    IseEvaluator ise(gp);
    const JointObjective obj = [&](const PointSet& xs, const PointSet& zs) { return ise(xs, zs); };
    const UpperBound ub = [&](const PointSet& xs) { return ise.upper_bound(xs); };
    const JointResult r = maximize_joint(obj, sp, sc, static_cast<std::uint64_t>(t), ub);
    const PointSet xs = feasible_probes(box, sc.resolution, sp.feasible, sp.anchors, sc.refine_steps);
    const double rescan = ise(xs, box.grid(sc.resolution)).maxCoeff();
    maximal += r.value == rescan && sp.feasible(PointSet(r.x))[0];
  }

  o.pass = worst <= kIncrementalTol && identical && monotone == static_cast<int>(g_traces.size()) &&
           maximal == problems;
  o.detail = fmt("incremental vs batch %.2e (tol %.0e), repeat CSV identical=%d, monotone traces %d/%zu, "
                 "grid re-scan maximal %d/%d",
                 worst, kIncrementalTol, identical, monotone, g_traces.size(), maximal, problems);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{
      entropy_approximation, closed_form_vs_monte_carlo, information_bounds, argmax_equivalence,
      mi_monotonicity,       safety_campaign,            synthetic_regret,   heteroskedastic_direction,
      pendulum_exploration,  theory_suite,               infrastructure};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int unexpected = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.id = id;
      o.title = "criterion";
      o.detail = std::string("exception: ") + e.what();
    }
    const char* tag = o.pass ? "PASS" : "FAIL";
    const char* note = o.pass ? "" : o.soft ? " [soft]" : o.known ? " [known deviation]" : "";
    std::printf("%s %2d %s: %s%s\n", tag, id, o.title.c_str(), o.detail.c_str(), note);
    std::fflush(stdout);
    if (!o.pass && !o.soft && !o.known) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
