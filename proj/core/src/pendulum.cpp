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

#include "safebo/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "safebo/errors.hpp"

namespace safebo {

PendulumTrace simulate_pendulum(double k_theta, double k_theta_dot, const PendulumConfig& cfg,
                                bool keep_trace) {
  PendulumTrace out;
  double th = cfg.theta0;
  double thd = cfg.theta_dot0;
  const double ml2 = cfg.mass * cfg.length * cfg.length;
  if (keep_trace) {
    out.theta.reserve(static_cast<size_t>(cfg.steps) + 1);
    out.theta_dot.reserve(static_cast<size_t>(cfg.steps) + 1);
    out.theta.push_back(th);
    out.theta_dot.push_back(thd);
  }
  for (int t = 0; t < cfg.steps; ++t) {
    const double u = std::clamp(k_theta * th + k_theta_dot * thd, -cfg.max_torque, cfg.max_torque);
    const double acc = 3.0 * cfg.gravity / (2.0 * cfg.length) * std::sin(th) + 3.0 / ml2 * u;
    thd = std::clamp(thd + acc * cfg.dt, -cfg.max_speed, cfg.max_speed);
    th += thd * cfg.dt;
    if (!std::isfinite(th) || !std::isfinite(thd)) {
      std::ostringstream msg;
      msg << "pendulum state became non-finite at step " << t << " for gains (" << k_theta << ", "
          << k_theta_dot << ")";
      throw SimulationError(msg.str());
    }
    out.max_abs_theta_dot = std::max(out.max_abs_theta_dot, std::abs(thd));
    if (keep_trace) {
      out.theta.push_back(th);
      out.theta_dot.push_back(thd);
    }
  }
  return out;
}

}  // namespace safebo
