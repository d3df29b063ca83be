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

#include "safebo/acquisition.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "safebo/errors.hpp"
#include "safebo/normal.hpp"

namespace safebo {

namespace {

using C = EntropyConstants;

constexpr double kMiClamp = 1e-14;

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

}  // namespace

double unsafe_prob(double mu, double sigma) {
  if (!(sigma > 0.0)) throw DegenerateInputError("unsafe_prob needs sigma > 0");
  return 0.5 + 0.5 * std::erf(-mu / (sigma * std::numbers::sqrt2));
}

double exact_entropy(double mu, double sigma) {
  if (!(sigma > 0.0)) return 0.0;
  // Evaluate the smaller tail with erfc to keep precision for large |mu|/sigma.
  const double z = std::abs(mu) / (sigma * std::numbers::sqrt2);
  const double p = 0.5 * std::erfc(z);
  return binary_entropy(p);
}

double approx_entropy(double mu, double sigma) {
  const double r = mu / sigma;
  return C::kLn2 * std::exp(-C::kC1 * r * r);
}

MIQuery make_mi_query(const GaussianPosterior& gp, const Vector& x, const Vector& z) {
  const ExtendedPoint px{x, Channel::kConstraint};
  const ExtendedPoint pz{z, Channel::kConstraint};
  const MeanVar mx = gp.mean_var(px);
  const MeanVar mz = gp.mean_var(pz);
  MIQuery q;
  q.mu_z = mz.mean;
  q.sigma_z = std::sqrt(mz.variance);
  q.sigma_x = std::sqrt(mx.variance);
  q.noise_variance = gp.noise_variance(px);
  q.rho = (mx.variance > 0.0 && mz.variance > 0.0) ? gp.correlation(px, pz) : 0.0;
  return q;
}

double expected_post_entropy(const MIQuery& q) {
  if (!(q.sigma_z > 0.0)) return 0.0;
  if (!(q.noise_variance > 0.0)) throw DegenerateInputError("measurement noise must be positive");
  const double vx = q.sigma_x * q.sigma_x;
  const double rho2 = std::min(q.rho * q.rho, 1.0);
  const double nv = q.noise_variance;
  const double den = nv + vx * (1.0 + C::kC2 * rho2);
  const double pref = std::sqrt((nv + vx * (1.0 - rho2)) / den);
  const double r2 = q.mu_z * q.mu_z / (q.sigma_z * q.sigma_z);
  return C::kLn2 * pref * std::exp(-C::kC1 * r2 * (nv + vx) / den);
}

double ise_mutual_info_reduced(double r2, double t) {
  if (!(t > 0.0)) return 0.0;
  t = std::min(t, 1.0);
  const double c2t = C::kC2 * t;
  double a = C::kC1 * r2 * c2t / (1.0 + c2t);
  // log1p(-1) = -inf gives expm1 = -1, the fully informative limit.
  a += 0.5 * (std::log1p(-t) - std::log1p(c2t));
  const double mi = C::kLn2 * std::exp(-C::kC1 * r2) * -std::expm1(a);
  return std::abs(mi) < kMiClamp ? 0.0 : mi;
}

double ise_mutual_info(const MIQuery& q) {
  if (!(q.sigma_z > 0.0) || !(q.sigma_x > 0.0)) return 0.0;
  if (!(q.noise_variance > 0.0)) throw DegenerateInputError("measurement noise must be positive");
  const double vx = q.sigma_x * q.sigma_x;
  const double t = std::min(q.rho * q.rho, 1.0) * vx / (vx + q.noise_variance);
  const double r2 = q.mu_z * q.mu_z / (q.sigma_z * q.sigma_z);
  return ise_mutual_info_reduced(r2, t);
}

double alpha_mes(double mu, double sigma, double ystar) {
  if (!(sigma > 1e-12)) return 0.0;
  const double theta = (ystar - mu) / sigma;
  const double value = 0.5 * theta * inverse_mills_ratio(theta) - log_normal_cdf(theta);
  return std::max(value, 0.0);
}

double alpha_mes_noisy(double mu, double sigma, double noise_variance, double ystar) {
  if (!(sigma > 1e-12)) return 0.0;
  if (!(noise_variance > 0.0)) return alpha_mes(mu, sigma, ystar);
  const double theta = (ystar - mu) / sigma;
  const double rho2 = sigma * sigma / (sigma * sigma + noise_variance);
  const double rho = std::sqrt(rho2);
  const double s = std::sqrt(1.0 - rho2);
  const double log_cdf_theta = log_normal_cdf(theta);
  // E[ln cdf(a) | f <= ystar] with a the standardized remaining slack
  // given the observation.
  auto weighted = [&](double u, double a) {
    const double la = log_normal_cdf(a);
    return normal_pdf(u) * std::exp(la - log_cdf_theta) * la;
  };
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  double j = 0.0;
  if (rho2 < 0.5) {
    j = Quad::integrate([&](double u) { return weighted(u, (theta - rho * u) / s); }, -12.0, 12.0,
                        6, 1e-10);
  } else {
    // Integrate over a; u = (theta - s a) / rho.
    const double a_lo = std::max((theta - 12.0 * rho) / s, -40.0);
    const double a_hi = std::min((theta + 12.0 * rho) / s, 12.0);
    if (a_hi > a_lo) {
      j = Quad::integrate([&](double a) { return weighted((theta - s * a) / rho, a); }, a_lo, a_hi,
                          6, 1e-10) * (s / rho);
    }
  }
  const double value = 0.5 * rho2 * theta * inverse_mills_ratio(theta) - log_cdf_theta + j;
  return std::max(value, 0.0);
}

double alpha_mes_hat(double mu, double sigma, double phi) {
  if (!(phi > mu)) throw PreconditionError("alpha_mes_hat requires phi > posterior mean");
  const double gap = phi - mu;
  return sigma * sigma / (gap * gap);
}

const ProbeCache& IseEvaluator::targets(const PointSet& zs) const {
  if (!has_zcache_ || zcache_.points.cols() != zs.cols() || zcache_.points != zs) {
    zcache_ = gp_.probe(Channel::kConstraint, zs);
    has_zcache_ = true;
  }
  return zcache_;
}

Matrix IseEvaluator::operator()(const PointSet& xs, const PointSet& zs) const {
  const ProbeCache& pz = targets(zs);
  const ProbeCache px = gp_.probe(Channel::kConstraint, xs);
  const Matrix cov = gp_.cross_covariance(px, pz);
  const Vector nv = gp_.noise(Channel::kConstraint).variance(xs);
  const Eigen::Index a = xs.cols();
  const Eigen::Index m = zs.cols();
  Vector r2(m);
  Vector inv_vz(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double vz = pz.variance[j];
    inv_vz[j] = vz > 0.0 ? 1.0 / vz : 0.0;
    r2[j] = pz.mean[j] * pz.mean[j] * inv_vz[j];
  }
  Matrix out = Matrix::Zero(a, m);
  for (Eigen::Index i = 0; i < a; ++i) {
    const double vx = px.variance[i];
    if (!(vx > 0.0)) continue;
    const double scale = 1.0 / (vx + nv[i]);  // rho_nu^2 / vx
    for (Eigen::Index j = 0; j < m; ++j) {
      if (inv_vz[j] == 0.0) continue;
      const double c = cov(i, j);
      out(i, j) = ise_mutual_info_reduced(r2[j], c * c * inv_vz[j] * scale);
    }
  }
  return out;
}

Vector IseEvaluator::upper_bound(const PointSet& xs) const {
  const ProbeCache px = gp_.probe(Channel::kConstraint, xs);
  const Vector nv = gp_.noise(Channel::kConstraint).variance(xs);
  return (C::kLn2 * px.variance.array() / nv.array()).matrix();
}

}  // namespace safebo
