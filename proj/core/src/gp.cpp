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

#include "safebo/gp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

#include "safebo/errors.hpp"

namespace safebo {

namespace {

constexpr int kMaxJitterRetries = 3;
constexpr double kJitterBase = 1e-10;

}  // namespace

GaussianPosterior::GaussianPosterior(ExtendedKernel kernel, std::array<NoiseModel, 2> noise)
    : kernel_(std::move(kernel)), noise_(std::move(noise)) {
  kernel_.validate();
  const int d = kernel_.dim();
  const int nblocks = kernel_.block_diagonal() ? 2 : 1;
  for (int i = 0; i < nblocks; ++i) {
    auto b = std::make_shared<Block>();
    b->x = PointSet(d, 0);
    b->y = Vector(0);
    b->noise = Vector(0);
    b->chol = Matrix(0, 0);
    b->v = Vector(0);
    b->outputscale = kernel_.block_diagonal()
                         ? kernel_.channel[i].outputscale
                         : std::max(kernel_.channel[0].outputscale, kernel_.channel[1].outputscale);
    blocks_[i] = b;
  }
  if (nblocks == 1) blocks_[1] = blocks_[0];
}

GaussianPosterior GaussianPosterior::from_dataset(ExtendedKernel kernel,
                                                  std::array<NoiseModel, 2> noise,
                                                  const Dataset& data) {
  GaussianPosterior gp(std::move(kernel), std::move(noise));
  const int nblocks = gp.kernel_.block_diagonal() ? 2 : 1;
  std::array<std::vector<const Observation*>, 2> members;
  for (const Observation& o : data) {
    if (!(o.noise_variance > 0.0)) throw PreconditionError("observation noise variance must be positive");
    members[gp.block_of(o.point.channel)].push_back(&o);
  }
  for (int i = 0; i < nblocks; ++i) {
    auto b = std::make_shared<Block>(*gp.blocks_[i]);
    const auto n = static_cast<Eigen::Index>(members[i].size());
    b->x.resize(gp.kernel_.dim(), n);
    b->y.resize(n);
    b->noise.resize(n);
    b->channels.clear();
    for (Eigen::Index j = 0; j < n; ++j) {
      const Observation& o = *members[i][static_cast<size_t>(j)];
      b->x.col(j) = o.point.x;
      b->y[j] = o.y;
      b->noise[j] = o.noise_variance;
      b->channels.push_back(o.point.channel);
    }
    gp.refactor(*b);
    gp.blocks_[i] = b;
  }
  if (nblocks == 1) gp.blocks_[1] = gp.blocks_[0];
  gp.data_ = data;
  return gp;
}

Matrix GaussianPosterior::block_gram(const Block& b) const {
  const Eigen::Index n = b.n();
  Matrix g(n, n);
  if (kernel_.block_diagonal()) {
    if (n > 0) g = kernel_[b.channels.front()].gram(b.x, b.x);
    return g;
  }
  const Matrix r = kernel_.channel[0].correlation(b.x, b.x);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = r(i, j) * kernel_.scale(b.channels[static_cast<size_t>(i)],
                                        b.channels[static_cast<size_t>(j)]);
    }
  }
  return g;
}

void GaussianPosterior::refactor(Block& b) const {
  const Eigen::Index n = b.n();
  if (n == 0) {
    b.chol = Matrix(0, 0);
    b.v = Vector(0);
    return;
  }
  Matrix g = block_gram(b);
  g.diagonal() += b.noise;
  double jitter = b.jitter;
  for (int attempt = 0; attempt <= kMaxJitterRetries; ++attempt) {
    Matrix gj = g;
    gj.diagonal().array() += jitter;
    Eigen::LLT<Matrix> llt(gj);
    if (llt.info() == Eigen::Success && llt.matrixL().toDenseMatrix().diagonal().minCoeff() > 0.0) {
      b.chol = llt.matrixL();
      b.v = b.chol.triangularView<Eigen::Lower>().solve(b.y);
      b.jitter = jitter;
      return;
    }
    if (attempt == kMaxJitterRetries) break;
    jitter = jitter == 0.0 ? kJitterBase * b.outputscale : jitter * 10.0;
  }
  std::ostringstream msg;
  msg << "Cholesky factorization failed for " << n << " observations with diagonal jitter "
      << jitter;
  throw FactorizationError(msg.str(), jitter);
}

std::shared_ptr<const GaussianPosterior::Block> GaussianPosterior::extend(
    const Block& b, const Observation& obs) const {
  const Eigen::Index n = b.n();
  auto out = std::make_shared<Block>();
  out->outputscale = b.outputscale;
  out->jitter = b.jitter;
  out->x.resize(b.x.rows(), n + 1);
  out->x.leftCols(n) = b.x;
  out->x.col(n) = obs.point.x;
  out->channels = b.channels;
  out->channels.push_back(obs.point.channel);
  out->y.resize(n + 1);
  out->y.head(n) = b.y;
  out->y[n] = obs.y;
  out->noise.resize(n + 1);
  out->noise.head(n) = b.noise;
  out->noise[n] = obs.noise_variance;

  const double knn = kernel_[obs.point.channel].outputscale;
  Vector l(n);
  if (n > 0) {
    PointSet px(b.x.rows(), 1);
    px.col(0) = obs.point.x;
    l = kernel_.gram(b.x, b.channels, px, obs.point.channel).col(0);
    b.chol.triangularView<Eigen::Lower>().solveInPlace(l);
  }
  const double d = knn + obs.noise_variance + b.jitter - l.squaredNorm();
  if (d > 1e-12 * knn && std::isfinite(d)) {
    const double sd = std::sqrt(d);
    out->chol = Matrix::Zero(n + 1, n + 1);
    out->chol.topLeftCorner(n, n) = b.chol;
    out->chol.block(n, 0, 1, n) = l.transpose();
    out->chol(n, n) = sd;
    out->v.resize(n + 1);
    out->v.head(n) = b.v;
    out->v[n] = (obs.y - l.dot(b.v)) / sd;
    return out;
  }
  refactor(*out);
  return out;
}

GaussianPosterior GaussianPosterior::condition(const Observation& obs) const {
  if (!(obs.noise_variance > 0.0)) throw PreconditionError("observation noise variance must be positive");
  if (obs.point.x.size() != kernel_.dim()) throw PreconditionError("observation dimension mismatch");
  GaussianPosterior next = *this;
  const int bi = block_of(obs.point.channel);
  next.blocks_[bi] = extend(*blocks_[bi], obs);
  if (!kernel_.block_diagonal()) next.blocks_[1] = next.blocks_[0];
  next.data_.push_back(obs);
  return next;
}

GaussianPosterior GaussianPosterior::condition(const ExtendedPoint& p, double y) const {
  return condition(Observation{p, y, noise_variance(p)});
}

double GaussianPosterior::jitter(Channel c) const { return blocks_[block_of(c)]->jitter; }

ProbeCache GaussianPosterior::probe(Channel c, const PointSet& points) const {
  const Block& b = *blocks_[block_of(c)];
  ProbeCache out;
  out.channel = c;
  out.points = points;
  out.block = block_of(c);
  const double prior = kernel_[c].outputscale;
  const Eigen::Index m = points.cols();
  if (b.n() == 0) {
    out.mean = Vector::Zero(m);
    out.variance = Vector::Constant(m, prior);
    out.solved = Matrix(0, m);
    return out;
  }
  out.solved = kernel_.gram(b.x, b.channels, points, c);
  b.chol.triangularView<Eigen::Lower>().solveInPlace(out.solved);
  out.mean = out.solved.transpose() * b.v;
  out.variance = (prior - out.solved.colwise().squaredNorm().transpose().array()).max(0.0);
  return out;
}

Matrix GaussianPosterior::cross_covariance(const ProbeCache& a, const ProbeCache& b) const {
  if (a.block != b.block) return Matrix::Zero(a.size(), b.size());
  Matrix k;
  if (a.channel == b.channel) {
    k = kernel_[a.channel].gram(a.points, b.points);
  } else {
    k = kernel_.scale(a.channel, b.channel) * kernel_.channel[0].correlation(a.points, b.points);
  }
  if (a.solved.rows() > 0) k.noalias() -= a.solved.transpose() * b.solved;
  return k;
}

MeanVar GaussianPosterior::mean_var(const ExtendedPoint& p) const {
  PointSet pts(p.x.size(), 1);
  pts.col(0) = p.x;
  const ProbeCache c = probe(p.channel, pts);
  return {c.mean[0], c.variance[0]};
}

double GaussianPosterior::covariance(const ExtendedPoint& a, const ExtendedPoint& b) const {
  PointSet pa(a.x.size(), 1), pb(b.x.size(), 1);
  pa.col(0) = a.x;
  pb.col(0) = b.x;
  return cross_covariance(probe(a.channel, pa), probe(b.channel, pb))(0, 0);
}

double GaussianPosterior::correlation(const ExtendedPoint& a, const ExtendedPoint& b) const {
  PointSet pa(a.x.size(), 1), pb(b.x.size(), 1);
  pa.col(0) = a.x;
  pb.col(0) = b.x;
  const ProbeCache ca = probe(a.channel, pa);
  const ProbeCache cb = probe(b.channel, pb);
  const double va = ca.variance[0];
  const double vb = cb.variance[0];
  if (!(va > 0.0) || !(vb > 0.0)) {
    throw DegenerateCorrelationError("correlation undefined at a point with zero posterior variance");
  }
  const double rho = cross_covariance(ca, cb)(0, 0) / std::sqrt(va * vb);
  return std::clamp(rho, -1.0, 1.0);
}

double GaussianPosterior::noise_variance(const ExtendedPoint& p) const {
  return noise_[index(p.channel)].variance(p.x);
}

double GaussianPosterior::noise_correlation_factor(const ExtendedPoint& p) const {
  const double var = mean_var(p).variance;
  const double nv = noise_variance(p);
  return var / (var + nv);
}

}  // namespace safebo
