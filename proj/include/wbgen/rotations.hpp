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

namespace wbgen {

/// Default half-width of the excluded band around +-pi/2 (radians).
inline constexpr double kProhibitionBand = 1e-3;

/// Projected pitch/roll of a body z-axis plus fused yaw about it.
///
/// theta_p is the angle of z_B projected onto the global xz-plane,
/// phi_p the angle of z_B projected onto the global yz-plane. The two are
/// independent: tilting in one plane leaves the other angle untouched.
struct ProjectedOrientation {
  double theta_p = 0.0;
  double phi_p = 0.0;
  double psi = 0.0;
};

struct ProjectedTilt {
  double theta_p = 0.0;
  double phi_p = 0.0;
};

/// A 3-vector of unit length (within 1e-12).
class UnitVec3 {
 public:
  UnitVec3() = default;
  /// Takes `v` as-is; throws InvalidParameter if it is not unit length.
  static UnitVec3 checked(const Eigen::Vector3d& v);
  /// Normalises `v`; throws InvalidParameter for a zero vector.
  static UnitVec3 normalized(const Eigen::Vector3d& v);

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Eigen::Vector3d& vec() const { return v_; }

 private:
  explicit UnitVec3(const Eigen::Vector3d& v) : v_(v) {}
  Eigen::Vector3d v_ = Eigen::Vector3d::UnitZ();
};

/// theta_p = atan2(z_x, z_z), phi_p = atan2(z_y, z_z).
///
/// Evaluated through the ratio z_x / z_z rounded to a 52-bit significand, so
/// vectors built by zaxis_from_projected recover each angle bit-for-bit
/// regardless of the other one.
ProjectedTilt projected_from_zaxis(const UnitVec3& z);

/// Unit z-axis with the given projected angles. Upper hemisphere when
/// cos(theta_p) > 0, lower otherwise; both angles must agree on the
/// hemisphere. Throws Singularity inside the prohibition band.
UnitVec3 zaxis_from_projected(double theta_p, double phi_p,
                              double band = kProhibitionBand);

/// Tilt-then-yaw rotation: R = R_tilt(z_B) * Rz(psi). Its third column is
/// the projected z-axis and its fused yaw is psi.
Eigen::Matrix3d rotation_from_projected(const ProjectedOrientation& o,
                                        double band = kProhibitionBand);

/// Fused yaw of a rotation, in (-pi, pi].
double fused_yaw(const Eigen::Matrix3d& r);

ProjectedOrientation projected_from_rotation(const Eigen::Matrix3d& r);

/// Angle between two unit vectors on their great circle.
double great_circle_angle(const UnitVec3& a, const UnitVec3& b);

/// Rotates z_s towards z_e about the great-circle normal by t times the arc
/// angle. Throws AmbiguousArc for antiparallel inputs.
UnitVec3 slerp_zaxis(const UnitVec3& z_s, const UnitVec3& z_e, double t);

/// True when `angle` lies strictly inside the band around +-pi/2.
bool in_prohibition_band(double angle, double band = kProhibitionBand);

/// Moves an angle inside the band to the nearest band edge. An angle exactly
/// on the singularity goes to the edge nearer zero.
double clamp_to_prohibition_band(double angle, double band = kProhibitionBand);

/// Wraps to (-pi, pi].
double wrap_angle(double angle);

Eigen::Matrix3d rot_x(double angle);
Eigen::Matrix3d rot_y(double angle);
Eigen::Matrix3d rot_z(double angle);

/// R = Rz(a) Rx(b) Ry(c), b in [-pi/2, pi/2].
Eigen::Vector3d decompose_zxy(const Eigen::Matrix3d& r);
/// R = Ry(a) Rx(b) Rz(c), b in [-pi/2, pi/2].
Eigen::Vector3d decompose_yxz(const Eigen::Matrix3d& r);

/// Double nearest to x / y on the 52-bit significand lattice (exact
/// quotient, ties to even). Exposed for testing.
double ratio_52(double x, double y);

}  // namespace wbgen
