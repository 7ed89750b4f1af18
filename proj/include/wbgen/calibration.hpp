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
#include <filesystem>
#include <numbers>
#include <string>

#include "wbgen/geometry.hpp"

namespace wbgen {

/// Mass-distribution pair of one triangle (limb or whole body).
struct Distribution {
  double p_l = 0.0;
  double p_s = 0.0;
};

struct RobotCalibration {
  double s_w = 0.0;
  double h_w = 0.0;
  double l_T = 0.0;
  double leg_upper = 0.0;
  double leg_lower = 0.0;
  double arm_upper = 0.0;
  double arm_lower = 0.0;
  Eigen::Vector3d o_LF = Eigen::Vector3d::Zero();
  Eigen::Vector3d o_RF = Eigen::Vector3d::Zero();
  /// Trunk CoM relative to the shoulder midpoint, trunk frame.
  Eigen::Vector3d o_T = Eigen::Vector3d::Zero();
  double m_T = 0.0;
  double m_arm = 0.0;
  double m_leg = 0.0;
  Distribution dist_body;
  Distribution dist_leg;
  Distribution dist_arm;
  double e_min_arm = 0.0;
  double e_max_arm = 0.0;
  double arm_y_margin = 0.05;
  /// Admissible pendulum lengths.
  double l_B_min = 0.25;
  double l_B_max = 0.41;

  // Angles live in code, never in the file.
  FoldLimits arm_fold{0.35, std::numbers::pi};
  FoldLimits leg_fold{0.35, std::numbers::pi};
  /// Leg-yaw value that corresponds to a zero hip-yaw joint.
  double hip_yaw_zero = std::numbers::pi;
  /// Elbow direction: outward-backward angle from the sagittal plane.
  double elbow_plane_angle = std::numbers::pi / 6.0;

  double total_mass() const { return m_T + 2.0 * m_arm + 2.0 * m_leg; }
  TriangleSpec leg_spec() const {
    return {leg_lower, leg_upper, dist_leg.p_s, dist_leg.p_l};
  }
  TriangleSpec arm_spec() const {
    return {arm_lower, arm_upper, dist_arm.p_s, dist_arm.p_l};
  }
  const Eigen::Vector3d& foot_offset(bool left) const { return left ? o_LF : o_RF; }

  /// Throws InvariantViolation naming the first bad field.
  void validate() const;
};

RobotCalibration load_calibration(const std::filesystem::path& path);
RobotCalibration parse_calibration(const std::string& text);
std::string dump_calibration(const RobotCalibration& cal);
void save_calibration(const RobotCalibration& cal, const std::filesystem::path& path);

/// Arm CoM shell for the given fold limits; also stores it in `cal`.
ComRange effective_e_limits(RobotCalibration& cal, const FoldLimits& fold);

}  // namespace wbgen
