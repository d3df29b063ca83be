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

#include "safebo/kernel.hpp"

#include <cmath>

#include "safebo/errors.hpp"

namespace safebo {

KernelSpec KernelSpec::rbf(int dim, double lengthscale, double outputscale) {
  KernelSpec k{Vector::Constant(dim, lengthscale), outputscale};
  k.validate();
  return k;
}

KernelSpec KernelSpec::normalized() const { return KernelSpec{lengthscale, 1.0}; }

void KernelSpec::validate() const {
  if (lengthscale.size() == 0) throw ConfigError("kernel needs at least one lengthscale");
  if ((lengthscale.array() <= 0.0).any()) throw ConfigError("kernel lengthscales must be positive");
  if (!(outputscale > 0.0)) throw ConfigError("kernel outputscale must be positive");
}

double KernelSpec::operator()(const Vector& a, const Vector& b) const {
  const double r2 = ((a - b).array() / lengthscale.array()).square().sum();
  return outputscale * std::exp(-0.5 * r2);
}

Matrix KernelSpec::correlation(const PointSet& a, const PointSet& b) const {
  const Eigen::ArrayXd inv = lengthscale.array().inverse();
  const Matrix sa = a.array().colwise() * inv;
  const Matrix sb = b.array().colwise() * inv;
  Matrix out(a.cols(), b.cols());
  if (a.rows() == 1) {
    for (Eigen::Index j = 0; j < sb.cols(); ++j) {
      out.col(j) = (-0.5 * (sa.row(0).transpose().array() - sb(0, j)).square()).exp();
    }
    return out;
  }
  const Eigen::VectorXd na = sa.colwise().squaredNorm();
  const Eigen::RowVectorXd nb = sb.colwise().squaredNorm();
  out.noalias() = -2.0 * sa.transpose() * sb;
  out.colwise() += na;
  out.rowwise() += nb;
  out = (-0.5 * out.array().max(0.0)).exp();
  return out;
}

Matrix KernelSpec::gram(const PointSet& a, const PointSet& b) const {
  return outputscale * correlation(a, b);
}

ExtendedKernel ExtendedKernel::independent(KernelSpec objective, KernelSpec constraint) {
  ExtendedKernel k;
  k.channel = {std::move(objective), std::move(constraint)};
  k.validate();
  return k;
}

void ExtendedKernel::validate() const {
  channel[0].validate();
  channel[1].validate();
  if (channel[0].dim() != channel[1].dim()) throw ConfigError("channel kernels differ in dimension");
  if (!block_diagonal()) {
    if (std::abs(cross_correlation) >= 1.0) throw ConfigError("cross correlation must lie in (-1, 1)");
    if (channel[0].lengthscale != channel[1].lengthscale) {
      throw ConfigError("cross-channel correlation requires shared lengthscales");
    }
  }
}

double ExtendedKernel::scale(Channel a, Channel b) const {
  if (a == b) return channel[index(a)].outputscale;
  return cross_correlation * std::sqrt(channel[0].outputscale * channel[1].outputscale);
}

double ExtendedKernel::operator()(const ExtendedPoint& a, const ExtendedPoint& b) const {
  if (a.channel == b.channel) return channel[index(a.channel)](a.x, b.x);
  if (block_diagonal()) return 0.0;
  return scale(a.channel, b.channel) * channel[0].normalized()(a.x, b.x);
}

Matrix ExtendedKernel::gram(const PointSet& a, const std::vector<Channel>& ca,
                            const PointSet& b, Channel cb) const {
  Matrix r = channel[index(cb)].correlation(a, b);
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    const Channel c = ca[static_cast<size_t>(i)];
    const double s = (c != cb && block_diagonal()) ? 0.0 : scale(c, cb);
    r.row(i) *= s;
  }
  return r;
}

NoiseModel NoiseModel::homoskedastic(double variance) {
  if (!(variance > 0.0)) throw ConfigError("noise variance must be positive");
  NoiseModel m;
  m.kind_ = Kind::kHomoskedastic;
  m.constant_ = variance;
  m.fn_ = nullptr;
  return m;
}

NoiseModel NoiseModel::heteroskedastic(std::function<double(const Vector&)> fn) {
  if (!fn) throw ConfigError("heteroskedastic noise needs a variance function");
  NoiseModel m;
  m.kind_ = Kind::kHeteroskedastic;
  m.fn_ = std::move(fn);
  return m;
}

double NoiseModel::variance(const Vector& x) const {
  if (kind_ == Kind::kHomoskedastic) return constant_;
  const double v = fn_(x);
  if (!(v > 0.0)) throw ConfigError("noise variance function returned a non-positive value");
  return v;
}

Vector NoiseModel::variance(const PointSet& xs) const {
  if (kind_ == Kind::kHomoskedastic) return Vector::Constant(xs.cols(), constant_);
  Vector out(xs.cols());
  for (Eigen::Index j = 0; j < xs.cols(); ++j) out[j] = variance(Vector(xs.col(j)));
  return out;
}

}  // namespace safebo
