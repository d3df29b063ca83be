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

#ifndef SAFEBO_PENDULUM_HPP_
#define SAFEBO_PENDULUM_HPP_

#include <vector>

namespace safebo {

// Inverted pendulum with the classic gym constants (g = 10, m = l = 1),
// semi-implicit Euler steps, torque and speed clipping. Angle 0 is upright.
struct PendulumConfig {
  double gravity = 10.0;
  double mass = 1.0;
  double length = 1.0;
  double dt = 0.05;
  double max_torque = 2.0;
  double max_speed = 8.0;
  int steps = 400;
  double theta0 = 0.05;
  double theta_dot0 = 0.0;
};

struct PendulumTrace {
  std::vector<double> theta;
  std::vector<double> theta_dot;
  double max_abs_theta_dot = 0.0;
};

// Runs one episode under u = k_theta * theta + k_theta_dot * theta_dot.
PendulumTrace simulate_pendulum(double k_theta, double k_theta_dot,
                                const PendulumConfig& cfg = {}, bool keep_trace = false);

}  // namespace safebo

#endif  // SAFEBO_PENDULUM_HPP_
