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

#include "safebo/types.hpp"

#include <algorithm>

#include "safebo/errors.hpp"

namespace safebo {

Box::Box(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size() || lower.size() == 0) {
    throw ConfigError("box bounds must be non-empty and of equal dimension");
  }
  for (int i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) throw ConfigError("box lower bound must be < upper bound");
  }
}

Box Box::cube(int dim, double lo, double hi) {
  return Box(Vector::Constant(dim, lo), Vector::Constant(dim, hi));
}

bool Box::contains(const Vector& x, double tol) const {
  if (x.size() != lower.size()) return false;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
  }
  return true;
}

Vector Box::clamp(const Vector& x) const {
  return x.cwiseMax(lower).cwiseMin(upper);
}

PointSet Box::grid(int resolution) const {
  return grid(std::vector<int>(dim(), resolution));
}

PointSet Box::grid(const std::vector<int>& resolution) const {
  const int d = dim();
  if (static_cast<int>(resolution.size()) != d) throw ConfigError("grid resolution size mismatch");
  Eigen::Index total = 1;
  for (int r : resolution) {
    if (r < 2) throw ConfigError("grid resolution must be >= 2");
    total *= r;
  }
  PointSet out(d, total);
  std::vector<int> idx(d, 0);
  for (Eigen::Index j = 0; j < total; ++j) {
    for (int k = 0; k < d; ++k) {
      const double t = static_cast<double>(idx[k]) / (resolution[k] - 1);
      out(k, j) = idx[k] == resolution[k] - 1 ? upper[k] : lower[k] + t * (upper[k] - lower[k]);
    }
    for (int k = d - 1; k >= 0; --k) {
      if (++idx[k] < resolution[k]) break;
      idx[k] = 0;
    }
  }
  return out;
}

bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

PointSet to_point_set(const std::vector<Vector>& points) {
  if (points.empty()) return PointSet();
  PointSet out(points.front().size(), static_cast<Eigen::Index>(points.size()));
  for (size_t j = 0; j < points.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = points[j];
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace safebo
