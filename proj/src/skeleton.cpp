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

#include "wbgen/skeleton.hpp"

#include "wbgen/geometry.hpp"
#include "wbgen/rotations.hpp"

namespace wbgen {

namespace {

constexpr std::array<std::string_view, kNumJoints> kJointNames{
    "left_hip_yaw",       "left_hip_roll",      "left_hip_pitch",    "left_knee",
    "left_ankle_pitch",   "left_ankle_roll",    "right_hip_yaw",     "right_hip_roll",
    "right_hip_pitch",    "right_knee",         "right_ankle_pitch", "right_ankle_roll",
    "left_shoulder_pitch", "left_shoulder_roll", "left_shoulder_yaw", "left_elbow",
    "right_shoulder_pitch", "right_shoulder_roll", "right_shoulder_yaw", "right_elbow"};

Eigen::Vector3d down(double length) { return {0.0, 0.0, -length}; }

}  // namespace

std::string_view joint_name(int joint) { return kJointNames.at(joint); }

int joint_index(std::string_view name) {
  for (int i = 0; i < kNumJoints; ++i) {
    if (kJointNames[i] == name) return i;
  }
  return -1;
}

Eigen::Vector3d hip_in_trunk(const RobotCalibration& cal, Side s) {
  return {0.0, side_sign(s) * cal.h_w / 2.0, 0.0};
}

Eigen::Vector3d shoulder_in_trunk(const RobotCalibration& cal, Side s) {
  return {0.0, side_sign(s) * cal.s_w / 2.0, cal.l_T};
}

Eigen::Matrix3d leg_rotation(const JointVector& q, Side s) {
  const int b = leg_base(s);
  return rot_z(q[b]) * rot_x(q[b + 1]) * rot_y(q[b + 2]);
}

Eigen::Matrix3d arm_rotation(const JointVector& q, Side s) {
  const int b = arm_base(s);
  return rot_y(q[b]) * rot_x(q[b + 1]) * rot_z(q[b + 2]);
}

BodyPoints forward_skeleton(const RobotCalibration& cal, const Frame& trunk, const JointVector& q) {
  BodyPoints p;
  p.trunk = trunk;
  const Eigen::Matrix3d& rt = trunk.rotation;
  for (Side s : kSides) {
    const int i = side_index(s);
    const int lb = leg_base(s);
    const Eigen::Matrix3d thigh = rt * leg_rotation(q, s);
    const Eigen::Matrix3d shank = thigh * rot_y(q[lb + 3]);
    p.hip[i] = trunk * hip_in_trunk(cal, s);
    p.knee[i] = p.hip[i] + thigh * down(cal.leg_upper);
    p.ankle[i] = p.knee[i] + shank * down(cal.leg_lower);
    p.foot[i].rotation = shank * rot_y(q[lb + 4]) * rot_x(q[lb + 5]);
    p.foot[i].position = p.ankle[i] + p.foot[i].rotation * cal.foot_offset(s == Side::kLeft);
    p.com_leg[i] = mass_point(p.hip[i], p.knee[i], p.ankle[i], cal.dist_leg.p_s, cal.dist_leg.p_l);

    const int ab = arm_base(s);
    const Eigen::Matrix3d upper = rt * arm_rotation(q, s);
    p.shoulder[i] = trunk * shoulder_in_trunk(cal, s);
    p.elbow[i] = p.shoulder[i] + upper * down(cal.arm_upper);
    p.wrist[i] = p.elbow[i] + upper * rot_y(q[ab + 3]) * down(cal.arm_lower);
    p.com_arm[i] =
        mass_point(p.shoulder[i], p.elbow[i], p.wrist[i], cal.dist_arm.p_s, cal.dist_arm.p_l);
  }
  p.com_trunk = trunk * (Eigen::Vector3d(0.0, 0.0, cal.l_T) + cal.o_T);
  p.com = five_mass_com(cal, p.com_trunk, p.com_leg, p.com_arm);
  return p;
}

BodyPoints forward_skeleton_anchored(const RobotCalibration& cal, const JointVector& q,
                                     Side support, const Frame& support_foot) {
  const BodyPoints local = forward_skeleton(cal, Frame{}, q);
  const Frame foot_in_trunk = local.foot[side_index(support)];
  return forward_skeleton(cal, support_foot * foot_in_trunk.inverse(), q);
}

Eigen::Vector3d five_mass_com(const RobotCalibration& cal, const Eigen::Vector3d& trunk,
                              const std::array<Eigen::Vector3d, 2>& legs,
                              const std::array<Eigen::Vector3d, 2>& arms) {
  const Eigen::Vector3d weighted =
      cal.m_T * trunk + cal.m_leg * (legs[0] + legs[1]) + cal.m_arm * (arms[0] + arms[1]);
  return weighted / cal.total_mass();
}

}  // namespace wbgen
