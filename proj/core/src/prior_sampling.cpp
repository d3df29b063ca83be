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

#include "safebo/prior_sampling.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Cholesky>

#include "safebo/errors.hpp"

namespace safebo {

Matrix jittered_cholesky(const Matrix& gram, double outputscale) {
  double jitter = 0.0;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    Matrix g = gram;
    g.diagonal().array() += jitter;
    Eigen::LLT<Matrix> llt(g);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    if (attempt == 3) break;
    jitter = jitter == 0.0 ? 1e-10 * outputscale : jitter * 10.0;
  }
  std::ostringstream msg;
  msg << "prior Gram factorization failed with diagonal jitter " << jitter;
  throw FactorizationError(msg.str(), jitter);
}

namespace {

Vector standard_normals(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  Vector z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = normal(rng);
  return z;
}

}  // namespace

Vector sample_prior_function(const KernelSpec& kernel, const PointSet& grid, std::uint64_t seed) {
  kernel.validate();
  std::map<std::vector<double>, Eigen::Index> unique_index;
  std::vector<Eigen::Index> slot(static_cast<size_t>(grid.cols()));
  std::vector<Eigen::Index> firsts;
  for (Eigen::Index j = 0; j < grid.cols(); ++j) {
    std::vector<double> key(grid.col(j).data(), grid.col(j).data() + grid.rows());
    auto [it, inserted] = unique_index.emplace(key, static_cast<Eigen::Index>(firsts.size()));
    if (inserted) firsts.push_back(j);
    slot[static_cast<size_t>(j)] = it->second;
  }
  PointSet unique(grid.rows(), static_cast<Eigen::Index>(firsts.size()));
  for (size_t i = 0; i < firsts.size(); ++i) unique.col(static_cast<Eigen::Index>(i)) = grid.col(firsts[i]);
  const Matrix chol = jittered_cholesky(kernel.gram(unique, unique), kernel.outputscale);
  const Vector values = chol * standard_normals(unique.cols(), seed);
  Vector out(grid.cols());
  for (Eigen::Index j = 0; j < grid.cols(); ++j) out[j] = values[slot[static_cast<size_t>(j)]];
  return out;
}

Vector sample_prior_on_product_grid(const KernelSpec& kernel, const Box& box, int resolution,
                                    std::uint64_t seed) {
  kernel.validate();
  const int d = box.dim();
  if (kernel.dim() != d) throw ConfigError("kernel and box dimensions differ");
  // Per-axis factors of the unit-outputscale correlation; the outputscale is
  // applied once at the end.
  std::vector<Matrix> factors;
  for (int k = 0; k < d; ++k) {
    Box axis(box.lower.segment(k, 1), box.upper.segment(k, 1));
    const PointSet nodes = axis.grid(resolution);
    KernelSpec axis_kernel{kernel.lengthscale.segment(k, 1), 1.0};
    factors.push_back(jittered_cholesky(axis_kernel.gram(nodes, nodes), 1.0));
  }
  Eigen::Index total = 1;
  for (int k = 0; k < d; ++k) total *= resolution;
  Vector values = standard_normals(total, seed);
  // Apply (L_0 x ... x L_{d-1}) one axis at a time.
  Eigen::Index inner = total;
  for (int k = 0; k < d; ++k) {
    inner /= resolution;
    const Eigen::Index outer = total / (inner * resolution);
    for (Eigen::Index o = 0; o < outer; ++o) {
      const Eigen::Index base = o * resolution * inner;
      Eigen::Map<Matrix, 0, Eigen::OuterStride<>> block(values.data() + base, inner, resolution,
                                                        Eigen::OuterStride<>(inner));
      block = (block * factors[static_cast<size_t>(k)].transpose()).eval();
    }
  }
  return std::sqrt(kernel.outputscale) * values;
}

}  // namespace safebo
