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
#include <Eigen/Geometry>
#include <array>
#include <string>
#include <string_view>

#include "wbgen/calibration.hpp"

namespace wbgen {

// Leg chain: hip yaw (z), hip roll (x), hip pitch (y), knee (y), ankle pitch
// (y), ankle roll (x). Arm chain: shoulder pitch (y), shoulder roll (x),
// shoulder yaw (z), elbow (y). All joints zero: limbs hang straight down.
enum Joint : int {
  kLeftHipYaw,
  kLeftHipRoll,
  kLeftHipPitch,
  kLeftKnee,
  kLeftAnklePitch,
  kLeftAnkleRoll,
  kRightHipYaw,
  kRightHipRoll,
  kRightHipPitch,
  kRightKnee,
  kRightAnklePitch,
  kRightAnkleRoll,
  kLeftShoulderPitch,
  kLeftShoulderRoll,
  kLeftShoulderYaw,
  kLeftElbow,
  kRightShoulderPitch,
  kRightShoulderRoll,
  kRightShoulderYaw,
  kRightElbow,
  kNumJoints
};

using JointVector = std::array<double, kNumJoints>;

std::string_view joint_name(int joint);
/// Returns -1 for unknown names.
int joint_index(std::string_view name);

enum class Side { kLeft, kRight };
inline constexpr std::array<Side, 2> kSides{Side::kLeft, Side::kRight};
inline int side_index(Side s) { return s == Side::kLeft ? 0 : 1; }
inline double side_sign(Side s) { return s == Side::kLeft ? 1.0 : -1.0; }
inline int leg_base(Side s) { return s == Side::kLeft ? kLeftHipYaw : kRightHipYaw; }
inline int arm_base(Side s) {
  return s == Side::kLeft ? kLeftShoulderPitch : kRightShoulderPitch;
}

/// Rigid transform with separate rotation and translation.
struct Frame {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d position = Eigen::Vector3d::Zero();

  Eigen::Vector3d operator*(const Eigen::Vector3d& p) const { return rotation * p + position; }
  Frame operator*(const Frame& o) const {
    return {rotation * o.rotation, rotation * o.position + position};
  }
  Frame inverse() const {
    return {rotation.transpose(), -(rotation.transpose() * position)};
  }
};

/// Body points of the five-mass model, indexed [left, right].
struct BodyPoints {
  Frame trunk;  ///< origin at the hip midpoint
  std::array<Eigen::Vector3d, 2> hip, knee, ankle;
  std::array<Frame, 2> foot;  ///< foot-centre frames
  std::array<Eigen::Vector3d, 2> shoulder, elbow, wrist;
  Eigen::Vector3d com_trunk;
  std::array<Eigen::Vector3d, 2> com_leg, com_arm;
  Eigen::Vector3d com;
};

/// Hip (z = 0) and shoulder (z = l_T) joint centres in the trunk frame.
Eigen::Vector3d hip_in_trunk(const RobotCalibration& cal, Side s);
Eigen::Vector3d shoulder_in_trunk(const RobotCalibration& cal, Side s);

/// Trunk-relative rotation of the upper leg / upper arm for given joints.
Eigen::Matrix3d leg_rotation(const JointVector& q, Side s);
Eigen::Matrix3d arm_rotation(const JointVector& q, Side s);

/// Forward kinematics of the joint skeleton given the trunk frame.
BodyPoints forward_skeleton(const RobotCalibration& cal, const Frame& trunk, const JointVector& q);

/// Same skeleton, with the trunk placed so that the support foot's centre
/// frame coincides with `support_foot`.
BodyPoints forward_skeleton_anchored(const RobotCalibration& cal, const JointVector& q,
                                     Side support, const Frame& support_foot);

/// Mass-weighted CoM of the five point masses.
Eigen::Vector3d five_mass_com(const RobotCalibration& cal, const Eigen::Vector3d& trunk,
                              const std::array<Eigen::Vector3d, 2>& legs,
                              const std::array<Eigen::Vector3d, 2>& arms);

}  // namespace wbgen
