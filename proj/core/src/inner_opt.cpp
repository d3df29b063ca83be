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

#include "safebo/inner_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "safebo/errors.hpp"

namespace safebo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using Key = std::vector<double>;
Key key_of(const Vector& x) { return {x.data(), x.data() + x.size()}; }

double sanitize(double v) { return std::isnan(v) ? kNegInf : v; }

bool better_pair(double av, const Vector& ax, const Vector& az, double bv, const Vector& bx,
                 const Vector& bz) {
  if (av != bv) return av > bv;
  if (bx.size() == 0) return true;
  if (lex_less(ax, bx)) return true;
  if (lex_less(bx, ax)) return false;
  return lex_less(az, bz);
}

PointSet columns(const PointSet& src, const std::vector<Eigen::Index>& idx) {
  PointSet out(src.rows(), static_cast<Eigen::Index>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = src.col(idx[i]);
  return out;
}

struct PatternState {
  Vector x;
  Vector z;
  double value = kNegInf;
};

}  // namespace

std::string to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::kGrid:
      return "grid";
    case SearchMode::kMultistart:
      return "multistart";
    case SearchMode::kLine:
      return "line";
  }
  return "grid";
}

SearchMode search_mode_from_string(const std::string& name) {
  if (name == "grid") return SearchMode::kGrid;
  if (name == "multistart") return SearchMode::kMultistart;
  if (name == "line") return SearchMode::kLine;
  throw ConfigError("unknown search mode '" + name + "'");
}

SearchConfig SearchConfig::defaults_for(int dim) {
  SearchConfig cfg;
  if (dim <= 2) {
    cfg.mode = SearchMode::kGrid;
  } else if (dim == 3) {
    cfg.mode = SearchMode::kMultistart;
  } else {
    cfg.mode = SearchMode::kLine;
  }
  return cfg;
}

std::vector<int> SearchConfig::grid_resolution(int dim) const {
  if (!resolution.empty()) {
    if (resolution.size() == 1) return std::vector<int>(dim, resolution[0]);
    if (static_cast<int>(resolution.size()) != dim) throw ConfigError("grid resolution has wrong size");
    return resolution;
  }
  const int r = dim == 1 ? 401 : dim == 2 ? 31 : dim == 3 ? 11 : 5;
  return std::vector<int>(dim, r);
}

void SearchConfig::validate() const {
  for (int r : resolution) {
    if (r < 2) throw ConfigError("grid resolution must be >= 2");
  }
  if (refine_steps < 0) throw ConfigError("refine_steps must be >= 0");
  if (multistart_count < 0) throw ConfigError("multistart_count must be >= 0");
  if (!(initial_step > 0.0) || !(tolerance > 0.0)) throw ConfigError("pattern steps must be positive");
  if (!(shrink > 0.0 && shrink < 1.0)) throw ConfigError("shrink must lie in (0, 1)");
  if (line_resolution < 2) throw ConfigError("line_resolution must be >= 2");
  if (chunk < 1 || max_evals < 1) throw ConfigError("chunk and max_evals must be positive");
}

bool better(double a_value, const Vector& a_point, double b_value, const Vector& b_point) {
  if (a_value != b_value) return a_value > b_value;
  if (b_point.size() == 0) return true;
  return lex_less(a_point, b_point);
}

Vector random_direction(int dim, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  Vector u(dim);
  do {
    for (int k = 0; k < dim; ++k) u[k] = normal(rng);
  } while (u.norm() < 1e-8);
  return u / u.norm();
}

PointSet LineSegment::map(const PointSet& t) const {
  PointSet out(origin.size(), t.cols());
  for (Eigen::Index j = 0; j < t.cols(); ++j) out.col(j) = origin + t(0, j) * direction;
  return out;
}

Box LineSegment::parameter_box() const {
  return Box(Vector::Constant(1, tmin), Vector::Constant(1, tmax));
}

LineSegment random_line(const SearchProblem& problem, std::uint64_t seed) {
  LineSegment line;
  line.origin = problem.incumbent.size() > 0 ? problem.incumbent : problem.anchors.at(0);
  line.direction = random_direction(problem.box.dim(), seed);
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int k = 0; k < problem.box.dim(); ++k) {
    const double u = line.direction[k];
    if (std::abs(u) < 1e-15) continue;
    double a = (problem.box.lower[k] - line.origin[k]) / u;
    double b = (problem.box.upper[k] - line.origin[k]) / u;
    if (a > b) std::swap(a, b);
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  }
  lo = std::min(lo, 0.0);
  hi = std::max(hi, 0.0);
  if (!(hi - lo > 1e-12)) throw ExplorationStallError("line through the incumbent has zero length");
  line.tmin = lo;
  line.tmax = hi;
  return line;
}

PointSet feasible_probes(const Box& box, const std::vector<int>& resolution,
                         const Feasibility& feasible, const std::vector<Vector>& anchors,
                         int refine_steps) {
  const int d = box.dim();
  const PointSet nodes = box.grid(resolution);
  const std::vector<char> ok = feasible(nodes);
  std::vector<Vector> points;
  std::map<Key, Eigen::Index> seen;
  auto add = [&](const Vector& p) {
    if (seen.emplace(key_of(p), static_cast<Eigen::Index>(points.size())).second) points.push_back(p);
  };
  for (Eigen::Index j = 0; j < nodes.cols(); ++j) {
    if (ok[static_cast<size_t>(j)]) add(nodes.col(j));
  }
  for (const Vector& a : anchors) {
    if (box.contains(a, 1e-12)) add(a);
  }
  if (refine_steps <= 0 || points.empty()) return to_point_set(points);

  Vector spacing(d);
  for (int k = 0; k < d; ++k) spacing[k] = (box.upper[k] - box.lower[k]) / (resolution[static_cast<size_t>(k)] - 1);

  std::vector<Vector> from;
  std::vector<Vector> to;
  const size_t base = points.size();
  for (size_t i = 0; i < base; ++i) {
    for (int k = 0; k < d; ++k) {
      for (double sign : {-1.0, 1.0}) {
        Vector q = points[i];
        q[k] = std::clamp(q[k] + sign * spacing[k], box.lower[k], box.upper[k]);
        if (q[k] == points[i][k]) continue;
        from.push_back(points[i]);
        to.push_back(q);
      }
    }
  }
  if (from.empty()) return to_point_set(points);
  const std::vector<char> qok = feasible(to_point_set(to));
  std::vector<Vector> lo;
  std::vector<Vector> hi;
  for (size_t i = 0; i < from.size(); ++i) {
    if (!qok[i]) {
      lo.push_back(from[i]);
      hi.push_back(to[i]);
    }
  }
  if (lo.empty()) return to_point_set(points);
  std::vector<Vector> start = lo;
  for (int step = 0; step < refine_steps; ++step) {
    std::vector<Vector> mids(lo.size());
    for (size_t i = 0; i < lo.size(); ++i) mids[i] = 0.5 * (lo[i] + hi[i]);
    const std::vector<char> mok = feasible(to_point_set(mids));
    for (size_t i = 0; i < lo.size(); ++i) {
      if (mok[i]) {
        lo[i] = mids[i];
      } else {
        hi[i] = mids[i];
      }
    }
  }
  for (size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] != start[i]) add(lo[i]);
  }
  return to_point_set(points);
}

JointResult exhaustive_joint(const JointObjective& objective, const PointSet& xs,
                             const PointSet& zs, int chunk, const UpperBound& upper_bound) {
  JointResult best;
  best.value = kNegInf;
  best.targets = zs;
  const Eigen::Index a = xs.cols();
  if (a == 0 || zs.cols() == 0) throw ExplorationStallError("no feasible probe for the joint search");
  std::vector<Eigen::Index> order(static_cast<size_t>(a));
  std::iota(order.begin(), order.end(), 0);
  Vector ub;
  if (upper_bound) {
    ub = upper_bound(xs);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return ub[i] > ub[j]; });
  }
  for (size_t start = 0; start < order.size(); start += static_cast<size_t>(chunk)) {
    const size_t stop = std::min(order.size(), start + static_cast<size_t>(chunk));
    std::vector<Eigen::Index> rows;
    for (size_t r = start; r < stop; ++r) {
      if (!upper_bound || !(ub[order[r]] < best.value)) rows.push_back(order[r]);
    }
    if (rows.empty()) {
      if (upper_bound) break;
      continue;
    }
    const PointSet sub = columns(xs, rows);
    const Matrix values = objective(sub, zs);
    best.evaluations += values.size();
    for (Eigen::Index i = 0; i < sub.cols(); ++i) {
      for (Eigen::Index j = 0; j < zs.cols(); ++j) {
        const double v = sanitize(values(i, j));
        if (v < best.value) continue;
        const Vector x = sub.col(i);
        const Vector z = zs.col(j);
        if (better_pair(v, x, z, best.value, best.x, best.z)) {
          best.value = v;
          best.x = x;
          best.z = z;
        }
      }
    }
  }
  return best;
}

namespace {

SingleResult exhaustive_single(const SingleObjective& objective, const PointSet& xs, int chunk) {
  if (xs.cols() == 0) throw ExplorationStallError("no feasible probe for the search");
  SingleResult best;
  best.value = kNegInf;
  for (Eigen::Index start = 0; start < xs.cols(); start += chunk) {
    const Eigen::Index len = std::min<Eigen::Index>(chunk, xs.cols() - start);
    const Vector v = objective(xs.middleCols(start, len));
    best.evaluations += len;
    for (Eigen::Index i = 0; i < len; ++i) {
      const double val = sanitize(v[i]);
      const Vector x = xs.col(start + i);
      if (better(val, x, best.value, best.x)) {
        best.value = val;
        best.x = x;
      }
    }
  }
  return best;
}

std::vector<Vector> restart_points(const SearchProblem& problem, int count) {
  std::vector<Vector> out;
  if (problem.incumbent.size() > 0) out.push_back(problem.incumbent);
  const int n = static_cast<int>(problem.anchors.size());
  for (int i = n - 1; i >= 0 && static_cast<int>(out.size()) < count + 1; --i) {
    out.push_back(problem.anchors[static_cast<size_t>(i)]);
  }
  return out;
}

// Moves along +-step_k e_k clamped to the box, skipping null moves.
std::vector<Vector> compass(const Vector& p, const Vector& step, const Box& box) {
  std::vector<Vector> out;
  for (int k = 0; k < p.size(); ++k) {
    for (double sign : {-1.0, 1.0}) {
      Vector q = p;
      q[k] = std::clamp(q[k] + sign * step[k], box.lower[k], box.upper[k]);
      if (q[k] != p[k]) out.push_back(q);
    }
  }
  return out;
}

}  // namespace

JointResult maximize_joint(const JointObjective& objective, const SearchProblem& problem,
                           const SearchConfig& cfg, std::uint64_t seed,
                           const UpperBound& upper_bound) {
  cfg.validate();
  const Box& box = problem.box;
  const int d = box.dim();
  if (cfg.mode == SearchMode::kGrid) {
    const std::vector<int> res = cfg.grid_resolution(d);
    const PointSet xs = feasible_probes(box, res, problem.feasible, problem.anchors, cfg.refine_steps);
    return exhaustive_joint(objective, xs, box.grid(res), cfg.chunk, upper_bound);
  }
  if (cfg.mode == SearchMode::kLine) {
    const LineSegment line = random_line(problem, seed);
    const Box tbox = line.parameter_box();
    Feasibility tfeas = [&](const PointSet& t) { return problem.feasible(line.map(t)); };
    JointObjective tobj = [&](const PointSet& tx, const PointSet& tz) {
      return objective(line.map(tx), line.map(tz));
    };
    UpperBound tub = nullptr;
    if (upper_bound) tub = [&](const PointSet& t) { return upper_bound(line.map(t)); };
    const std::vector<int> res{cfg.line_resolution};
    const PointSet tx = feasible_probes(tbox, res, tfeas, {Vector::Zero(1)}, cfg.refine_steps);
    const PointSet tz = tbox.grid(res);
    JointResult r = exhaustive_joint(tobj, tx, tz, cfg.chunk, tub);
    r.x = line.map(PointSet(r.x)).col(0);
    r.z = line.map(PointSet(r.z)).col(0);
    r.targets = line.map(tz);
    r.direction = line.direction;
    return r;
  }

  // Multistart compass search over (x, z) seeded by a coarse exhaustive pass.
  const std::vector<int> coarse(d, 5);
  const PointSet cx = feasible_probes(box, coarse, problem.feasible, problem.anchors, cfg.refine_steps);
  const PointSet cz = box.grid(coarse);
  JointResult best = exhaustive_joint(objective, cx, cz, cfg.chunk, upper_bound);

  std::vector<Vector> starts = restart_points(problem, cfg.multistart_count);
  std::vector<PatternState> states;
  states.push_back({best.x, best.z, best.value});
  if (!starts.empty()) {
    const Matrix v = objective(to_point_set(starts), cz);
    best.evaluations += v.size();
    for (size_t i = 0; i < starts.size(); ++i) {
      Eigen::Index j = 0;
      const double val = v.row(static_cast<Eigen::Index>(i)).maxCoeff(&j);
      states.push_back({starts[i], cz.col(j), sanitize(val)});
    }
  }
  const Vector width = box.width();
  const long budget = std::max<long>(1, cfg.max_evals / static_cast<long>(states.size()));
  for (PatternState& s : states) {
    Vector step = cfg.initial_step * width;
    long used = 0;
    while (used < budget && (step.array() / width.array()).maxCoeff() > cfg.tolerance) {
      PatternState cand = s;
      std::vector<Vector> xm = compass(s.x, step, box);
      if (!xm.empty()) {
        const PointSet xp = to_point_set(xm);
        const std::vector<char> ok = problem.feasible(xp);
        std::vector<Eigen::Index> keep;
        for (size_t i = 0; i < ok.size(); ++i) {
          if (ok[i]) keep.push_back(static_cast<Eigen::Index>(i));
        }
        if (!keep.empty()) {
          const PointSet xf = columns(xp, keep);
          PointSet zc(d, 1);
          zc.col(0) = s.z;
          const Matrix v = objective(xf, zc);
          used += v.size();
          for (Eigen::Index i = 0; i < xf.cols(); ++i) {
            const double val = sanitize(v(i, 0));
            if (better_pair(val, xf.col(i), s.z, cand.value, cand.x, cand.z) && val > s.value) {
              cand = {xf.col(i), s.z, val};
            }
          }
        }
      }
      std::vector<Vector> zm = compass(s.z, step, box);
      if (!zm.empty()) {
        PointSet xc(d, 1);
        xc.col(0) = s.x;
        const PointSet zp = to_point_set(zm);
        const Matrix v = objective(xc, zp);
        used += v.size();
        for (Eigen::Index j = 0; j < zp.cols(); ++j) {
          const double val = sanitize(v(0, j));
          if (better_pair(val, s.x, zp.col(j), cand.value, cand.x, cand.z) && val > s.value) {
            cand = {s.x, zp.col(j), val};
          }
        }
      }
      if (cand.value > s.value) {
        s = cand;
      } else {
        step *= cfg.shrink;
      }
    }
    best.evaluations += used;
    if (better_pair(s.value, s.x, s.z, best.value, best.x, best.z)) {
      best.value = s.value;
      best.x = s.x;
      best.z = s.z;
    }
  }
  return best;
}

SingleResult maximize_single(const SingleObjective& objective, const SearchProblem& problem,
                             const SearchConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const Box& box = problem.box;
  const int d = box.dim();
  if (cfg.mode == SearchMode::kGrid) {
    const PointSet xs = feasible_probes(box, cfg.grid_resolution(d), problem.feasible,
                                        problem.anchors, cfg.refine_steps);
    return exhaustive_single(objective, xs, cfg.chunk);
  }
  if (cfg.mode == SearchMode::kLine) {
    const LineSegment line = random_line(problem, seed);
    const Box tbox = line.parameter_box();
    Feasibility tfeas = [&](const PointSet& t) { return problem.feasible(line.map(t)); };
    SingleObjective tobj = [&](const PointSet& t) { return objective(line.map(t)); };
    const PointSet tx = feasible_probes(tbox, {cfg.line_resolution}, tfeas, {Vector::Zero(1)},
                                        cfg.refine_steps);
    SingleResult r = exhaustive_single(tobj, tx, cfg.chunk);
    r.x = line.map(PointSet(r.x)).col(0);
    r.direction = line.direction;
    return r;
  }

  const PointSet cx = feasible_probes(box, std::vector<int>(d, 5), problem.feasible,
                                      problem.anchors, cfg.refine_steps);
  SingleResult best = exhaustive_single(objective, cx, cfg.chunk);
  std::vector<Vector> starts{best.x};
  for (const Vector& p : restart_points(problem, cfg.multistart_count)) starts.push_back(p);
  const Vector width = box.width();
  const long budget = std::max<long>(1, cfg.max_evals / static_cast<long>(starts.size()));
  for (const Vector& start : starts) {
    Vector x = start;
    double value = sanitize(objective(x)[0]);
    long used = 1;
    Vector step = cfg.initial_step * width;
    while (used < budget && (step.array() / width.array()).maxCoeff() > cfg.tolerance) {
      const std::vector<Vector> moves = compass(x, step, box);
      bool moved = false;
      if (!moves.empty()) {
        const PointSet mp = to_point_set(moves);
        const std::vector<char> ok = problem.feasible(mp);
        const Vector v = objective(mp);
        used += mp.cols();
        Vector nx = x;
        double nv = value;
        for (Eigen::Index i = 0; i < mp.cols(); ++i) {
          const double val = ok[static_cast<size_t>(i)] ? sanitize(v[i]) : kNegInf;
          if (val > value && better(val, mp.col(i), nv, nx)) {
            nv = val;
            nx = mp.col(i);
            moved = true;
          }
        }
        x = nx;
        value = nv;
      }
      if (!moved) step *= cfg.shrink;
    }
    best.evaluations += used;
    if (better(value, x, best.value, best.x)) {
      best.value = value;
      best.x = x;
    }
  }
  return best;
}

}  // namespace safebo
