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

#include "wbgen/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wbgen/errors.hpp"

namespace wbgen {

Eigen::Vector3d forward_com_fullchain(const FullChainModel& model, const WholeBodyPose& pose) {
  const Frame root{pose.trunk.rotation, pose.trunk.hip_mid};
  return model.com(model.link_frames(root, pose.joints));
}

double approximation_error(const FullChainModel& model, const RobotCalibration& cal,
                           const PoseKeyframe& kf) {
  const WholeBodyPose pose = generate_pose(kf, cal);
  return (forward_com_fullchain(model, pose) - pose.com).norm();
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "l_B") return SweepParameter::kPendulumLength;
  if (name == "theta_pT") return SweepParameter::kTrunkPitch;
  if (name == "phi_pT") return SweepParameter::kTrunkRoll;
  if (name == "psi_T") return SweepParameter::kTrunkYaw;
  throw InvalidParameter("unknown sweep parameter '" + name + "'");
}

std::string sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::kPendulumLength:
      return "l_B";
    case SweepParameter::kTrunkPitch:
      return "theta_pT";
    case SweepParameter::kTrunkRoll:
      return "phi_pT";
    case SweepParameter::kTrunkYaw:
      return "psi_T";
  }
  return {};
}

std::vector<double> sweep_values(const SweepSpec& spec) {
  if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi) || spec.hi < spec.lo) {
    throw InvalidParameter("sweep range must satisfy lo <= hi");
  }
  if (spec.hi == spec.lo) return {spec.lo};
  if (!(spec.step > 0.0)) throw InvalidParameter("sweep step must be positive");
  const auto n = static_cast<long>(std::floor((spec.hi - spec.lo) / spec.step + 1e-9));
  std::vector<double> values;
  values.reserve(n + 1);
  for (long i = 0; i <= n; ++i) {
    double v = std::min(spec.lo + static_cast<double>(i) * spec.step, spec.hi);
    if (std::abs(v) < 1e-9 * spec.step) v = 0.0;  // exact centre for symmetric ranges
    values.push_back(v);
  }
  return values;
}

std::vector<SweepRow> error_sweep(const FullChainModel& model, const RobotCalibration& cal,
                                  const SweepSpec& spec, const PoseKeyframe& base) {
  std::vector<SweepRow> rows;
  for (double v : sweep_values(spec)) {
    PoseKeyframe kf = base;
    switch (spec.parameter) {
      case SweepParameter::kPendulumLength:
        kf.pendulum.l = v;
        break;
      case SweepParameter::kTrunkPitch:
        kf.trunk.theta_p = v;
        break;
      case SweepParameter::kTrunkRoll:
        kf.trunk.phi_p = v;
        break;
      case SweepParameter::kTrunkYaw:
        kf.trunk.psi = v;
        break;
    }
    rows.push_back({v, approximation_error(model, cal, kf)});
  }
  return rows;
}

std::string sweep_csv(SweepParameter p, const std::vector<SweepRow>& rows) {
  std::string out = "param_name,param_value,e_a_m\n";
  const std::string name = sweep_parameter_name(p);
  char buf[96];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%.9g,%.9g\n", name.c_str(), r.value, r.e_a);
    out += buf;
  }
  return out;
}

}  // namespace wbgen
