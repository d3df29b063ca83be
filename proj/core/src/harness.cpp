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

#include "safebo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "safebo/errors.hpp"
#include "safebo/theory.hpp"

namespace safebo {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

template <typename T>
T get_as(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

StrategySpec parse_strategy(const json& j) {
  if (j.is_string()) return StrategySpec::parse(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("strategy must be a string or an object");
  check_keys(j, {"name", "lipschitz", "phi"}, "strategy");
  StrategySpec s = StrategySpec::parse(get_as<std::string>(j, "name", "strategy"));
  if (j.contains("lipschitz")) s.lipschitz = get_as<double>(j, "lipschitz", "strategy");
  if (j.contains("phi")) s.phi = get_as<double>(j, "phi", "strategy");
  if (s.kind == StrategyKind::kSafeOpt && !(s.lipschitz >= 0.0)) {
    throw ConfigError("safeopt lipschitz constant must be non-negative");
  }
  if (s.kind == StrategyKind::kTheoryCombined && !j.contains("phi")) {
    throw ConfigError("theory_combined needs phi");
  }
  return s;
}

KernelOverride parse_override(const json& j, const std::string& where) {
  check_keys(j, {"lengthscale", "outputscale", "noise_variance"}, where);
  KernelOverride o;
  if (j.contains("lengthscale")) o.lengthscale = get_as<double>(j, "lengthscale", where);
  if (j.contains("outputscale")) o.outputscale = get_as<double>(j, "outputscale", where);
  if (j.contains("noise_variance")) o.noise_variance = get_as<double>(j, "noise_variance", where);
  return o;
}

SearchConfig parse_search(const json& j) {
  check_keys(j,
             {"mode", "resolution", "refine_steps", "multistart_count", "initial_step", "shrink",
              "tolerance", "max_evals", "line_resolution", "chunk"},
             "search");
  SearchConfig s;
  if (j.contains("mode")) s.mode = search_mode_from_string(get_as<std::string>(j, "mode", "search"));
  if (j.contains("resolution")) {
    const json& r = j.at("resolution");
    if (r.is_number_integer()) {
      s.resolution = {r.get<int>()};
    } else {
      s.resolution = get_as<std::vector<int>>(j, "resolution", "search");
    }
  }
  if (j.contains("refine_steps")) s.refine_steps = get_as<int>(j, "refine_steps", "search");
  if (j.contains("multistart_count")) {
    s.multistart_count = get_as<int>(j, "multistart_count", "search");
  }
  if (j.contains("initial_step")) s.initial_step = get_as<double>(j, "initial_step", "search");
  if (j.contains("shrink")) s.shrink = get_as<double>(j, "shrink", "search");
  if (j.contains("tolerance")) s.tolerance = get_as<double>(j, "tolerance", "search");
  if (j.contains("max_evals")) s.max_evals = get_as<int>(j, "max_evals", "search");
  if (j.contains("line_resolution")) {
    s.line_resolution = get_as<int>(j, "line_resolution", "search");
  }
  if (j.contains("chunk")) s.chunk = get_as<int>(j, "chunk", "search");
  return s;
}

BetaConfig parse_beta(const json& j) {
  BetaConfig b;
  if (j.is_number()) {
    b.value = j.get<double>();
    return b;
  }
  if (!j.is_object()) throw ConfigError("beta must be a number or an object");
  check_keys(j, {"mode", "value", "rkhs_bound_objective", "rkhs_bound_constraint", "subgaussian",
                 "delta"},
             "beta");
  const std::string mode = j.contains("mode") ? get_as<std::string>(j, "mode", "beta") : "constant";
  if (mode == "constant") {
    b.mode = BetaConfig::Mode::kConstant;
  } else if (mode == "theoretical") {
    b.mode = BetaConfig::Mode::kTheoretical;
  } else {
    throw ConfigError("unknown beta mode '" + mode + "'");
  }
  if (j.contains("value")) b.value = get_as<double>(j, "value", "beta");
  if (j.contains("rkhs_bound_objective")) {
    b.rkhs_bound_objective = get_as<double>(j, "rkhs_bound_objective", "beta");
  }
  if (j.contains("rkhs_bound_constraint")) {
    b.rkhs_bound_constraint = get_as<double>(j, "rkhs_bound_constraint", "beta");
  }
  if (j.contains("subgaussian")) b.subgaussian = get_as<double>(j, "subgaussian", "beta");
  if (j.contains("delta")) b.delta = get_as<double>(j, "delta", "beta");
  return b;
}

KernelSpec apply_override(KernelSpec k, const KernelOverride& o) {
  if (o.lengthscale) k.lengthscale.setConstant(*o.lengthscale);
  if (o.outputscale) k.outputscale = *o.outputscale;
  return k;
}

// Coarse grid for the greedy information-capacity estimate.
PointSet capacity_grid(const Box& box) {
  const int d = box.dim();
  const int r = std::max(2, static_cast<int>(std::floor(std::pow(400.0, 1.0 / d))));
  return box.grid(r);
}

// Grid on which safe-set membership is tracked between iterations.
PointSet monitor_grid(const Box& box, const SearchConfig& search) {
  const int d = box.dim();
  if (search.mode == SearchMode::kGrid) return box.grid(search.grid_resolution(d));
  const int r = std::max(2, static_cast<int>(std::floor(std::pow(2000.0, 1.0 / d))));
  return box.grid(r);
}

BetaSchedule make_schedule(const BenchmarkProblem& problem, const RunConfig& cfg, Channel c) {
  const BetaConfig& b = cfg.beta;
  if (b.mode == BetaConfig::Mode::kConstant) {
    return BetaSchedule::constant(b.value.value_or(problem.default_beta));
  }
  const GaussianPosterior prior = initial_posterior(problem, cfg);
  const double noise = prior.noise(c).variance(problem.seed);
  const std::vector<double> gamma =
      empirical_gamma(prior.kernel()[c], capacity_grid(problem.box), noise, cfg.iterations + 2);
  const double bound =
      c == Channel::kObjective ? b.rkhs_bound_objective : b.rkhs_bound_constraint;
  return BetaSchedule::theoretical(bound, b.subgaussian, b.delta, gamma);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void RunConfig::validate() const {
  if (benchmark.empty()) throw ConfigError("benchmark is required");
  const auto names = benchmark_names();
  if (std::find(names.begin(), names.end(), benchmark) == names.end()) {
    throw ConfigError("unknown benchmark '" + benchmark + "'");
  }
  if (strategies.empty()) throw ConfigError("at least one strategy is required");
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (seeds.empty()) throw ConfigError("seeds must be non-empty");
  std::set<std::uint64_t> distinct(seeds.begin(), seeds.end());
  if (distinct.size() != seeds.size()) throw ConfigError("seeds must be distinct");
  if (beta.value && !(*beta.value > 0.0)) throw ConfigError("beta must be positive");
  if (beta.mode == BetaConfig::Mode::kTheoretical) {
    if (!(beta.delta > 0.0 && beta.delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
    if (!(beta.subgaussian > 0.0)) throw ConfigError("subgaussian constant must be positive");
  }
  for (const KernelOverride* o : {&objective_override, &constraint_override}) {
    if (o->lengthscale && !(*o->lengthscale > 0.0)) throw ConfigError("lengthscale must be > 0");
    if (o->outputscale && !(*o->outputscale > 0.0)) throw ConfigError("outputscale must be > 0");
    if (o->noise_variance && !(*o->noise_variance > 0.0)) {
      throw ConfigError("noise variance must be > 0");
    }
  }
  if (search) search->validate();
  if (!(mes_weight >= 0.0)) throw ConfigError("mes_weight must be non-negative");
  if (max_value_candidates < 1) throw ConfigError("max_value_candidates must be >= 1");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  check_keys(j,
             {"benchmark", "strategy", "strategies", "iterations", "seeds", "beta", "kernel",
              "search", "mes_weight", "max_value_candidates", "constraint_only", "certify_grid",
              "output_dir", "threads"},
             "config");
  RunConfig cfg;
  cfg.benchmark = get_as<std::string>(j, "benchmark", "config");
  if (j.contains("strategy") && j.contains("strategies")) {
    throw ConfigError("give either strategy or strategies");
  }
  if (j.contains("strategy")) cfg.strategies.push_back(parse_strategy(j.at("strategy")));
  if (j.contains("strategies")) {
    if (!j.at("strategies").is_array()) throw ConfigError("strategies must be an array");
    for (const json& s : j.at("strategies")) cfg.strategies.push_back(parse_strategy(s));
  }
  cfg.iterations = get_as<int>(j, "iterations", "config");
  if (!j.contains("seeds")) throw ConfigError("seeds is required");
  const json& seeds = j.at("seeds");
  if (seeds.is_array()) {
    cfg.seeds = get_as<std::vector<std::uint64_t>>(j, "seeds", "config");
  } else if (seeds.is_object()) {
    check_keys(seeds, {"start", "count"}, "seeds");
    const auto start = seeds.contains("start") ? get_as<std::uint64_t>(seeds, "start", "seeds") : 0;
    const int count = get_as<int>(seeds, "count", "seeds");
    if (count < 1) throw ConfigError("seeds.count must be >= 1");
    for (int i = 0; i < count; ++i) cfg.seeds.push_back(start + static_cast<std::uint64_t>(i));
  } else {
    throw ConfigError("seeds must be a list or {start, count}");
  }
  if (j.contains("beta")) cfg.beta = parse_beta(j.at("beta"));
  if (j.contains("kernel")) {
    const json& k = j.at("kernel");
    check_keys(k, {"objective", "constraint"}, "kernel");
    if (k.contains("objective")) cfg.objective_override = parse_override(k.at("objective"), "kernel.objective");
    if (k.contains("constraint")) {
      cfg.constraint_override = parse_override(k.at("constraint"), "kernel.constraint");
    }
  }
  if (j.contains("search")) cfg.search = parse_search(j.at("search"));
  if (j.contains("mes_weight")) cfg.mes_weight = get_as<double>(j, "mes_weight", "config");
  if (j.contains("max_value_candidates")) {
    cfg.max_value_candidates = get_as<int>(j, "max_value_candidates", "config");
  }
  if (j.contains("constraint_only")) cfg.constraint_only = get_as<bool>(j, "constraint_only", "config");
  if (j.contains("certify_grid")) cfg.certify_grid = get_as<bool>(j, "certify_grid", "config");
  if (j.contains("output_dir")) cfg.output_dir = get_as<std::string>(j, "output_dir", "config");
  if (j.contains("threads")) cfg.threads = get_as<int>(j, "threads", "config");
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

GaussianPosterior initial_posterior(const BenchmarkProblem& problem, const RunConfig& cfg) {
  ExtendedKernel kernel = problem.kernel;
  kernel.channel[index(Channel::kObjective)] =
      apply_override(kernel[Channel::kObjective], cfg.objective_override);
  kernel.channel[index(Channel::kConstraint)] =
      apply_override(kernel[Channel::kConstraint], cfg.constraint_override);
  std::array<NoiseModel, 2> noise = problem.noise;
  if (cfg.objective_override.noise_variance) {
    noise[index(Channel::kObjective)] = NoiseModel::homoskedastic(*cfg.objective_override.noise_variance);
  }
  if (cfg.constraint_override.noise_variance) {
    noise[index(Channel::kConstraint)] =
        NoiseModel::homoskedastic(*cfg.constraint_override.noise_variance);
  }
  return GaussianPosterior(kernel, noise);
}

SafeRegion initial_region(const BenchmarkProblem& problem, const RunConfig& cfg) {
  return SafeRegion(problem.seed, make_schedule(problem, cfg, Channel::kConstraint));
}

SearchConfig effective_search(const BenchmarkProblem& problem, const RunConfig& cfg) {
  SearchConfig s = cfg.search ? *cfg.search : problem.default_search;
  if (s.resolution.size() == 1 && problem.dim() > 1) {
    s.resolution.assign(static_cast<size_t>(problem.dim()), s.resolution.front());
  }
  if (!s.resolution.empty() && static_cast<int>(s.resolution.size()) != problem.dim()) {
    throw ConfigError("search resolution does not match the benchmark dimension");
  }
  s.validate();
  return s;
}

RunRecord run_single(const BenchmarkProblem& problem, const StrategySpec& spec,
                     const RunConfig& cfg, std::uint64_t seed) {
  RunRecord rec;
  rec.benchmark = problem.name;
  rec.strategy = spec.label();
  rec.seed = seed;
  rec.fstar = problem.fstar;
  const auto start = std::chrono::steady_clock::now();
  try {
    const SearchConfig search = effective_search(problem, cfg);
    const BetaSchedule beta_f = make_schedule(problem, cfg, Channel::kObjective);
    auto region = std::make_shared<SafeRegion>(initial_region(problem, cfg));
    GaussianPosterior gp = initial_posterior(problem, cfg);
    Rng noise_rng(derive_seed(seed, 0x6e6f697365ULL));
    std::normal_distribution<double> normal;

    auto observe = [&](const Vector& x, Channel c, double truth) {
      const double var = gp.noise(c).variance(x);
      const double y = truth + std::sqrt(var) * normal(noise_rng);
      gp = gp.condition(Observation{ExtendedPoint{x, c}, y, var});
      return y;
    };

    // The safe seed is evaluated once before the first iteration.
    const double f_seed = problem.f(problem.seed);
    if (!cfg.constraint_only) observe(problem.seed, Channel::kObjective, f_seed);
    observe(problem.seed, Channel::kConstraint, problem.s(problem.seed));

    const PointSet monitor = monitor_grid(problem.box, search);
    if (cfg.certify_grid) region->certify_passing(gp, monitor, 0);
    std::vector<char> members = region->is_safe(gp, monitor, 0);

    std::vector<double> f_true;
    std::vector<char> violations;
    for (int n = 1; n <= cfg.iterations; ++n) {
      SelectionContext ctx;
      ctx.gp = &gp;
      ctx.region = region.get();
      ctx.box = problem.box;
      ctx.iteration = n - 1;
      ctx.search = search;
      ctx.seed = derive_seed(derive_seed(seed, 0x73656c656374ULL), static_cast<std::uint64_t>(n));
      ctx.mes_weight = cfg.mes_weight;
      ctx.beta_objective = beta_f(n - 1);
      ctx.max_value.candidates = cfg.max_value_candidates;
      const Selection sel = select_strategy(spec, ctx);

      IterationRow row;
      row.n = n;
      row.x = sel.x;
      row.component = sel.diagnostics.component;
      row.alpha_ise = sel.diagnostics.alpha_ise;
      row.alpha_mes = sel.diagnostics.alpha_mes;
      row.safe_at_selection = region->is_safe(gp, sel.x, n - 1);
      row.f_true = problem.f(sel.x);
      row.s_true = problem.s(sel.x);
      row.violation = safe_violation_check(problem, sel.x);

      if (row.safe_at_selection) region->certify(gp, sel.x, n - 1);
      row.yf = cfg.constraint_only ? std::numeric_limits<double>::quiet_NaN()
                                   : observe(sel.x, Channel::kObjective, row.f_true);
      row.ys = observe(sel.x, Channel::kConstraint, row.s_true);
      if (cfg.certify_grid) region->certify_passing(gp, monitor, n);

      const std::vector<char> now = region->is_safe(gp, monitor, n);
      for (size_t j = 0; j < now.size(); ++j) {
        if (members[j] && !now[j]) rec.monotone = false;
      }
      if (region->archive_size() < (rec.rows.empty() ? 0 : rec.rows.back().archive_size)) {
        rec.monotone = false;
      }
      members = now;
      row.archive_size = region->archive_size();

      f_true.push_back(row.f_true);
      violations.push_back(row.violation ? 1 : 0);
      rec.rows.push_back(std::move(row));
    }

    const std::vector<double> regret =
        simple_regret(f_true, violations, problem.fstar, f_seed);
    int violated = 0;
    for (size_t i = 0; i < rec.rows.size(); ++i) {
      rec.rows[i].regret = regret[i];
      violated += violations[i];
    }
    rec.final_regret = regret.back();
    rec.violation_fraction = static_cast<double>(violated) / static_cast<double>(rec.rows.size());
    rec.posterior = std::make_shared<const GaussianPosterior>(gp);
    rec.region = region;
  } catch (const ExplorationStallError& e) {
    rec.ok = false;
    rec.error = std::string("exploration stall: ") + e.what();
  } catch (const SimulationError& e) {
    rec.ok = false;
    rec.error = std::string("simulation: ") + e.what();
  } catch (const FactorizationError& e) {
    rec.ok = false;
    rec.error = std::string("factorization: ") + e.what();
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

Aggregate aggregate(const std::vector<RunRecord>& records) {
  Aggregate agg;
  if (records.empty()) return agg;
  agg.strategy = records.front().strategy;
  const size_t n = records.front().rows.size();
  for (const RunRecord& r : records) {
    if (r.rows.size() != n) throw PreconditionError("records differ in iteration count");
  }
  const double m = static_cast<double>(records.size());
  agg.runs = static_cast<int>(records.size());
  agg.mean_regret.assign(n, 0.0);
  agg.stderr_regret.assign(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (const RunRecord& r : records) sum += r.rows[i].regret;
    const double mean = sum / m;
    double ss = 0.0;
    for (const RunRecord& r : records) ss += (r.rows[i].regret - mean) * (r.rows[i].regret - mean);
    agg.mean_regret[i] = mean;
    // Sample standard deviation over sqrt(m); zero for a single record.
    agg.stderr_regret[i] = records.size() > 1 ? std::sqrt(ss / (m - 1.0)) / std::sqrt(m) : 0.0;
  }
  double vsum = 0.0;
  double fsum = 0.0;
  for (const RunRecord& r : records) {
    vsum += r.violation_fraction;
    fsum += r.final_regret;
  }
  agg.violation_mean = vsum / m;
  agg.final_regret_mean = fsum / m;
  double vss = 0.0;
  for (const RunRecord& r : records) {
    vss += (r.violation_fraction - agg.violation_mean) * (r.violation_fraction - agg.violation_mean);
  }
  agg.violation_std = records.size() > 1 ? std::sqrt(vss / (m - 1.0)) : 0.0;
  return agg;
}

Campaign run_campaign(const RunConfig& cfg) {
  cfg.validate();
  struct Job {
    size_t strategy;
    size_t seed;
  };
  std::vector<Job> jobs;
  for (size_t s = 0; s < cfg.strategies.size(); ++s) {
    for (size_t k = 0; k < cfg.seeds.size(); ++k) jobs.push_back({s, k});
  }
  Campaign campaign;
  campaign.records.resize(jobs.size());
  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      try {
        const std::uint64_t seed = cfg.seeds[jobs[i].seed];
        const BenchmarkProblem problem = make_benchmark(cfg.benchmark, seed);
        campaign.records[i] = run_single(problem, cfg.strategies[jobs[i].strategy], cfg, seed);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  const int nthreads = std::min<int>(cfg.threads, static_cast<int>(jobs.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (size_t s = 0; s < cfg.strategies.size(); ++s) {
    std::vector<RunRecord> ok;
    for (size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].strategy != s) continue;
      if (campaign.records[i].ok) {
        ok.push_back(campaign.records[i]);
      } else {
        ++campaign.failures;
      }
    }
    Aggregate agg = aggregate(ok);
    agg.strategy = cfg.strategies[s].label();
    campaign.aggregates.push_back(std::move(agg));
  }
  return campaign;
}

std::string csv_header(int dim) {
  std::string h = "n";
  for (int k = 0; k < dim; ++k) h += ",x" + std::to_string(k);
  h += ",component,alpha_ise,alpha_mes,yf,ys,f_true,s_true,violation,regret";
  return h;
}

std::string to_csv(const RunRecord& record) {
  const int dim = record.rows.empty() ? 0 : static_cast<int>(record.rows.front().x.size());
  std::string out = csv_header(dim) + "\n";
  for (const IterationRow& r : record.rows) {
    out += std::to_string(r.n);
    for (Eigen::Index k = 0; k < r.x.size(); ++k) out += "," + format_double(r.x[k]);
    out += "," + r.component;
    for (double v : {r.alpha_ise, r.alpha_mes, r.yf, r.ys, r.f_true, r.s_true}) {
      out += "," + format_double(v);
    }
    out += std::string(",") + (r.violation ? "1" : "0");
    out += "," + format_double(r.regret) + "\n";
  }
  return out;
}

std::string summary_json(const RunConfig& cfg, const Campaign& campaign) {
  json j;
  j["benchmark"] = cfg.benchmark;
  j["iterations"] = cfg.iterations;
  j["seeds"] = cfg.seeds;
  j["failures"] = campaign.failures;
  json aggs = json::array();
  for (const Aggregate& a : campaign.aggregates) {
    json e;
    e["strategy"] = a.strategy;
    e["runs"] = a.runs;
    e["final_regret_mean"] = finite_or_null(a.final_regret_mean);
    e["violation_mean"] = a.violation_mean;
    e["violation_std"] = a.violation_std;
    json mean = json::array();
    json se = json::array();
    for (size_t i = 0; i < a.mean_regret.size(); ++i) {
      mean.push_back(finite_or_null(a.mean_regret[i]));
      se.push_back(finite_or_null(a.stderr_regret[i]));
    }
    e["mean_regret"] = mean;
    e["stderr_regret"] = se;
    aggs.push_back(e);
  }
  j["aggregates"] = aggs;
  json runs = json::array();
  for (const RunRecord& r : campaign.records) {
    json e;
    e["strategy"] = r.strategy;
    e["seed"] = r.seed;
    e["ok"] = r.ok;
    if (!r.ok) e["error"] = r.error;
    e["final_regret"] = finite_or_null(r.final_regret);
    e["violation_fraction"] = r.violation_fraction;
    e["monotone"] = r.monotone;
    e["wall_seconds"] = r.wall_seconds;
    runs.push_back(e);
  }
  j["runs"] = runs;
  return j.dump(2) + "\n";
}

void write_campaign(const RunConfig& cfg, const Campaign& campaign) {
  namespace fs = std::filesystem;
  const fs::path dir = resolve_output_dir(cfg.output_dir);
  fs::create_directories(dir);
  for (const RunRecord& r : campaign.records) {
    if (!r.ok) continue;
    const fs::path path = dir / (r.strategy + "_seed" + std::to_string(r.seed) + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << to_csv(r);
  }
  std::ofstream out(dir / "summary.json", std::ios::binary);
  if (!out) throw Error("cannot write summary.json");
  out << summary_json(cfg, campaign);
}

std::string resolve_output_dir(const std::string& configured) {
  if (const char* env = std::getenv("SAFEBO_OUTPUT_DIR"); env && *env) return env;
  return configured.empty() ? std::string("safebo_out") : configured;
}

}  // namespace safebo
