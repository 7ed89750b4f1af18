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

#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "wbgen/calibration.hpp"
#include "wbgen/full_chain.hpp"
#include "wbgen/pose.hpp"

namespace wbgen {

/// Ground-truth CoM: the pose's joints applied to the full chain, rooted at
/// the pose's trunk frame.
Eigen::Vector3d forward_com_fullchain(const FullChainModel& model, const WholeBodyPose& pose);

/// Distance between the full-chain CoM and the five-mass CoM of the pose
/// generated for `kf`.
double approximation_error(const FullChainModel& model, const RobotCalibration& cal,
                           const PoseKeyframe& kf);

enum class SweepParameter { kPendulumLength, kTrunkPitch, kTrunkRoll, kTrunkYaw };

/// Accepts the CSV names l_B, theta_pT, phi_pT, psi_T.
SweepParameter parse_sweep_parameter(const std::string& name);
std::string sweep_parameter_name(SweepParameter p);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::kPendulumLength;
  double lo = 0.25;
  double hi = 0.41;
  double step = 0.01;
};

struct SweepRow {
  double value = 0.0;
  double e_a = 0.0;
};

/// Values lo, lo + step, ... up to hi (inclusive within 1e-9 of a step).
std::vector<double> sweep_values(const SweepSpec& spec);

/// Varies one parameter of `base`; the others keep their values.
std::vector<SweepRow> error_sweep(const FullChainModel& model, const RobotCalibration& cal,
                                  const SweepSpec& spec, const PoseKeyframe& base);

/// Writes `param_name,param_value,e_a_m` rows.
std::string sweep_csv(SweepParameter p, const std::vector<SweepRow>& rows);

}  // namespace wbgen
