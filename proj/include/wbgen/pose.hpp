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
#include <array>
#include <optional>
#include <string>

#include "wbgen/calibration.hpp"
#include "wbgen/geometry.hpp"
#include "wbgen/rotations.hpp"
#include "wbgen/skeleton.hpp"

namespace wbgen {

struct PendulumState {
  double phi_p = 0.0;
  double theta_p = 0.0;
  double omega = 0.0;  ///< heading
  double l = 0.3;
};

/// Foot-centre position plus orientation.
struct FootPose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  ProjectedOrientation orientation;

  Frame frame() const;
};

struct PoseKeyframe {
  PendulumState pendulum;
  ProjectedOrientation trunk;
  FootPose foot_left;
  FootPose foot_right;
  double c_s = 0.5;  ///< 1 = full left support
  double duration = 1.0;

  const FootPose& foot(Side s) const { return s == Side::kLeft ? foot_left : foot_right; }
  /// Throws InvariantViolation for out-of-range fields.
  void validate(const RobotCalibration& cal) const;
};

struct TrunkPlacement {
  Eigen::Vector3d t_pp;
  Eigen::Matrix3d rotation;  ///< trunk orientation including heading
  std::array<Eigen::Vector3d, 2> hip, shoulder;
  Eigen::Vector3d hip_mid;
  Eigen::Vector3d com;
};

struct LegConfig {
  TriangleSolution triangle;
  Eigen::Vector3d hip, knee, ankle;
  Eigen::Vector3d com;
  Eigen::Vector3d plane_normal;  ///< knee axis
  double psi = 0.0;  ///< leg yaw from the analytic formula
  double yaw = 0.0;  ///< psi mapped through the hip-yaw zero offset
};

struct ArmConfig {
  TriangleSolution triangle;
  Eigen::Vector3d shoulder, elbow, wrist;
  Eigen::Vector3d com;
  Eigen::Vector3d plane_normal;  ///< elbow axis
};

struct DualArmPlacement {
  std::array<Eigen::Vector3d, 2> com;
  std::array<Eigen::Vector3d, 2> intersection;
  bool clamped = false;
};

struct WholeBodyPose {
  Eigen::Vector3d origin;
  Eigen::Vector3d target_com;
  TrunkPlacement trunk;
  std::array<LegConfig, 2> leg;
  std::array<ArmConfig, 2> arm;
  std::array<Frame, 2> foot;
  Eigen::Vector3d arm_target;  ///< combined arm CoM asked of the arms
  bool arms_clamped = false;
  Eigen::Vector3d com;  ///< achieved five-mass CoM
  Eigen::Vector3d residual_com_error;
  JointVector joints{};
};

/// Contact point of one foot: centre of the foot sole.
Eigen::Vector3d foot_contact(const FootPose& foot);
Eigen::Vector3d ankle_of(const FootPose& foot, Side s, const RobotCalibration& cal);

Eigen::Vector3d pendulum_origin(const FootPose& left, const FootPose& right, double c_s);
Eigen::Vector3d target_com(const Eigen::Vector3d& origin, const PendulumState& pendulum);

/// Trunk placement for zero heading; `generate_pose` applies the heading.
TrunkPlacement place_trunk(const PoseKeyframe& kf, const Eigen::Vector3d& origin,
                           const RobotCalibration& cal);

LegConfig place_leg(const Eigen::Vector3d& hip, const Frame& foot, Side s,
                    const RobotCalibration& cal);

/// CoM the free arm mass has to occupy. With `occupied` the other arm's CoM
/// is fixed and the result is for the single remaining arm.
Eigen::Vector3d arm_target_com(const Eigen::Vector3d& target, const Eigen::Vector3d& trunk_com,
                               const std::array<Eigen::Vector3d, 2>& leg_coms,
                               const std::optional<Eigen::Vector3d>& occupied,
                               const RobotCalibration& cal);

DualArmPlacement place_arms_dual(const Eigen::Vector3d& com_a, const TrunkPlacement& trunk,
                                 const RobotCalibration& cal);

ArmConfig arm_com_to_config(const Eigen::Vector3d& shoulder, const Eigen::Vector3d& com,
                            const Eigen::Matrix3d& trunk_rotation, Side s,
                            const RobotCalibration& cal);

/// Joint angles reproducing the given limb configurations.
JointVector joints_from_limbs(const TrunkPlacement& trunk, const std::array<LegConfig, 2>& legs,
                              const std::array<Frame, 2>& feet,
                              const std::array<ArmConfig, 2>& arms);

/// Upright pendulum and trunk, both feet flat with the ankles under the
/// hips, equal support.
PoseKeyframe standby_keyframe(const RobotCalibration& cal, double l_B);

WholeBodyPose generate_pose(const PoseKeyframe& kf, const RobotCalibration& cal);

}  // namespace wbgen
