// Copyright 2026 The wbgen Authors
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

#include "wbgen/sampling.hpp"

namespace wbgen {

double uniform_signed(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

PoseKeyframe random_keyframe(const RobotCalibration& cal, std::mt19937_64& rng) {
  const auto u = [&rng] { return uniform_signed(rng); };
  PoseKeyframe kf = standby_keyframe(cal, 0.3);
  kf.pendulum.theta_p = 0.12 * u();
  kf.pendulum.phi_p = 0.12 * u();
  kf.pendulum.l = 0.32 + 0.05 * u();
  kf.trunk.theta_p = 0.2 * u();
  kf.trunk.phi_p = 0.1 * u();
  kf.trunk.psi = 0.2 * u();
  for (FootPose* f : {&kf.foot_left, &kf.foot_right}) {
    const double dx = 0.03 * u();
    const double dy = 0.015 * u();
    const double dz = 0.02 * (u() + 1.0);
    f->position += Eigen::Vector3d(dx, dy, dz);
    const double theta = 0.08 * u();
    const double phi = 0.08 * u();
    const double psi = 0.15 * u();
    f->orientation = {theta, phi, psi};
  }
  kf.c_s = 0.5 + 0.15 * u();
  return kf;
}

std::vector<PoseKeyframe> reachable_keyframes(const RobotCalibration& cal, int n,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PoseKeyframe> out;
  while (static_cast<int>(out.size()) < n) {
    PoseKeyframe kf = random_keyframe(cal, rng);
    if (!generate_pose(kf, cal).arms_clamped) out.push_back(kf);
  }
  return out;
}

}  // namespace wbgen
