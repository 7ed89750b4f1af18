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
#include <string>
#include <vector>

#include "wbgen/calibration.hpp"
#include "wbgen/skeleton.hpp"

namespace wbgen {

/// One rigid link. Its frame is the parent frame shifted by `translation`
/// and then rotated about `axis` by the joint angle; a zero axis makes the
/// link fixed. Movable links are named after the skeleton joint they carry.
struct ChainLink {
  std::string name;
  std::string parent;  ///< empty for the root (the trunk)
  Eigen::Vector3d axis = Eigen::Vector3d::Zero();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  double mass = 0.0;
  Eigen::Vector3d com_offset = Eigen::Vector3d::Zero();

  bool movable() const { return !axis.isZero(0.0); }
};

/// Which part of the five-mass model a link belongs to.
enum class BodyPart { kTrunk, kLeftLeg, kRightLeg, kLeftArm, kRightArm };

class FullChainModel {
 public:
  FullChainModel() = default;
  FullChainModel(std::string name, std::vector<ChainLink> links);

  static FullChainModel parse(const std::string& json_text);
  static FullChainModel load(const std::filesystem::path& path);
  std::string dump() const;

  const std::string& name() const { return name_; }
  const std::vector<ChainLink>& links() const { return links_; }
  /// Throws InvalidParameter when the name is not a link.
  int index(const std::string& link) const;
  const std::vector<BodyPart>& parts() const { return parts_; }

  /// World frame of every link, in link order.
  std::vector<Frame> link_frames(const Frame& root, const JointVector& q) const;

  /// Mass-weighted CoM of the links of one part (or of all links).
  Eigen::Vector3d com(const std::vector<Frame>& frames) const;
  Eigen::Vector3d com(const std::vector<Frame>& frames, BodyPart part) const;
  double mass(BodyPart part) const;
  double total_mass() const;

  /// Limb masses must match the calibration within 1e-9 kg.
  void check_masses(const RobotCalibration& cal) const;

 private:
  void validate();

  std::string name_;
  std::vector<ChainLink> links_;
  std::vector<int> parent_index_;
  std::vector<int> joint_;  ///< skeleton joint per link, -1 when fixed
  std::vector<BodyPart> parts_;
};

/// Model whose masses reproduce the five-mass approximation exactly: one
/// trunk point, and per limb one point at the end vertex plus one on the
/// upper link.
FullChainModel point_mass_model(const RobotCalibration& cal);

struct DistributionSet {
  Distribution body;
  Distribution leg;
  Distribution arm;
};

/// Joint angles of the right-angle calibration pose: knees and elbows at
/// 90 degrees. With `body` the hips are also flexed 90 degrees (trunk pitched
/// forward onto straight legs) and the arms hang vertically.
JointVector calibration_joints(bool body);
/// Trunk frame used for the body calibration pose.
Frame body_calibration_root();

/// Right-angle calibration of (p_l, p_s) for legs, arms and the whole body.
/// Left and right limbs must agree within 1e-9.
DistributionSet calibrate_distribution(const FullChainModel& model);

/// Full calibration derived from the model: geometry, masses, trunk CoM
/// offset, distributions and the arm CoM shell for `base.arm_fold`.
/// Non-derivable fields (margins, pendulum range) are copied from `base`.
RobotCalibration derive_calibration(const FullChainModel& model, const RobotCalibration& base);

}  // namespace wbgen
