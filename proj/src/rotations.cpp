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

#include "wbgen/rotations.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "wbgen/errors.hpp"

namespace wbgen {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitTolerance = 1e-12;
constexpr double kAntiparallelMargin = 1e-6;

// Rounds a double to the nearest value whose last significand bit is zero.
// `above` tells the sign of (exact - x) when x itself came from rounding;
// zero means x is exact and a tie goes to even.
double round_52(double x, int above) {
  if (!std::isfinite(x) || x == 0.0) return x;
  const auto bits = std::bit_cast<std::uint64_t>(x);
  if ((bits & 1U) == 0) return x;
  const std::uint64_t sign = bits & (std::uint64_t{1} << 63);
  const std::uint64_t mag = bits & ~sign;
  // Direction of the exact value in magnitude terms.
  int up = x > 0.0 ? above : -above;
  if (up == 0) up = ((mag + 1) & 2U) == 0 ? 1 : -1;
  const std::uint64_t out = up > 0 ? mag + 1 : mag - 1;
  return std::bit_cast<double>(out | sign);
}

// Signed tangent rounded onto the 52-bit lattice.
double lattice_tan(double angle) { return round_52(std::tan(angle), 0); }

}  // namespace

double ratio_52(double x, double y) {
  const double q = x / y;
  if (!std::isfinite(q)) return q;
  const double residual = std::fma(-q, y, x);  // exact: x - q * y
  int above = 0;
  if (residual != 0.0) above = ((residual > 0.0) == (y > 0.0)) ? 1 : -1;
  return round_52(q, above);
}

UnitVec3 UnitVec3::checked(const Eigen::Vector3d& v) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitTolerance) {
    throw InvalidParameter("vector is not unit length");
  }
  return UnitVec3(v);
}

UnitVec3 UnitVec3::normalized(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidParameter("cannot normalise zero vector");
  return UnitVec3(v / n);
}

double wrap_angle(double angle) {
  double r = std::remainder(angle, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

bool in_prohibition_band(double angle, double band) {
  return std::abs(angle - kPi / 2.0) < band || std::abs(angle + kPi / 2.0) < band;
}

double clamp_to_prohibition_band(double angle, double band) {
  for (const double s : {kPi / 2.0, -kPi / 2.0}) {
    if (std::abs(angle - s) < band) {
      if (angle == s) return s > 0.0 ? s - band : s + band;
      return angle > s ? s + band : s - band;
    }
  }
  return angle;
}

ProjectedTilt projected_from_zaxis(const UnitVec3& zv) {
  const double x = zv.x();
  const double y = zv.y();
  const double z = zv.z();
  const auto angle = [z](double num) {
    if (z == 0.0) return std::atan2(num, z);
    const double base = std::atan(ratio_52(num, z));
    if (z > 0.0) return base;
    return std::signbit(num) ? base - kPi : base + kPi;
  };
  return {angle(x), angle(y)};
}

UnitVec3 zaxis_from_projected(double theta_p, double phi_p, double band) {
  if (in_prohibition_band(theta_p, band) || in_prohibition_band(phi_p, band)) {
    throw Singularity("projected angle inside the prohibition band");
  }
  const bool upper_theta = std::cos(theta_p) > 0.0;
  const bool upper_phi = std::cos(phi_p) > 0.0;
  if (upper_theta != upper_phi) {
    throw InvalidParameter("projected pitch and roll disagree on the hemisphere");
  }
  // Components proportional to (tan theta, tan phi, 1); the tangents sit on
  // the 52-bit lattice so the common scale cannot disturb either ratio.
  const double tx = lattice_tan(theta_p);
  const double ty = lattice_tan(phi_p);
  const double scale = 1.0 / std::sqrt(tx * tx + ty * ty + 1.0);
  Eigen::Vector3d v(tx * scale, ty * scale, scale);
  if (!upper_theta) v = -v;
  return UnitVec3::checked(v);
}

Eigen::Matrix3d rotation_from_projected(const ProjectedOrientation& o, double band) {
  const UnitVec3 z = zaxis_from_projected(o.theta_p, o.phi_p, band);
  const Eigen::Vector3d axis = Eigen::Vector3d::UnitZ().cross(z.vec());
  const double s = axis.norm();
  Eigen::Matrix3d tilt;
  if (s == 0.0) {
    tilt = z.z() > 0.0 ? Eigen::Matrix3d::Identity() : rot_x(kPi);
  } else {
    tilt = Eigen::AngleAxisd(std::atan2(s, z.z()), axis / s).toRotationMatrix();
  }
  return tilt * rot_z(o.psi);
}

double fused_yaw(const Eigen::Matrix3d& r) {
  const Eigen::Quaterniond q(r);
  return wrap_angle(2.0 * std::atan2(q.z(), q.w()));
}

ProjectedOrientation projected_from_rotation(const Eigen::Matrix3d& r) {
  const ProjectedTilt tilt = projected_from_zaxis(UnitVec3::normalized(r.col(2)));
  return {tilt.theta_p, tilt.phi_p, fused_yaw(r)};
}

double great_circle_angle(const UnitVec3& a, const UnitVec3& b) {
  return std::atan2(a.vec().cross(b.vec()).norm(), a.vec().dot(b.vec()));
}

UnitVec3 slerp_zaxis(const UnitVec3& z_s, const UnitVec3& z_e, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidParameter("slerp parameter outside [0, 1]");
  if (z_s.vec() == z_e.vec()) return z_s;
  const double arc = great_circle_angle(z_s, z_e);
  if (arc > kPi - kAntiparallelMargin) {
    throw AmbiguousArc("antiparallel z-axes have no unique great circle");
  }
  if (t == 0.0 || arc == 0.0) return z_s;
  if (t == 1.0) return z_e;
  const Eigen::Vector3d n = z_s.vec().cross(z_e.vec()).normalized();
  const double angle = t * arc;
  // Rodrigues with n orthogonal to z_s.
  const Eigen::Vector3d v = z_s.vec() * std::cos(angle) + n.cross(z_s.vec()) * std::sin(angle);
  return UnitVec3::normalized(v);
}

Eigen::Matrix3d rot_x(double angle) {
  return Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitX()).toRotationMatrix();
}
Eigen::Matrix3d rot_y(double angle) {
  return Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitY()).toRotationMatrix();
}
Eigen::Matrix3d rot_z(double angle) {
  return Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}

Eigen::Vector3d decompose_zxy(const Eigen::Matrix3d& r) {
  const double b = std::asin(std::clamp(r(2, 1), -1.0, 1.0));
  const double a = std::atan2(-r(0, 1), r(1, 1));
  const double c = std::atan2(-r(2, 0), r(2, 2));
  return {a, b, c};
}

Eigen::Vector3d decompose_yxz(const Eigen::Matrix3d& r) {
  const double b = std::asin(std::clamp(-r(1, 2), -1.0, 1.0));
  const double a = std::atan2(r(0, 2), r(2, 2));
  const double c = std::atan2(r(1, 0), r(1, 1));
  return {a, b, c};
}

}  // namespace wbgen
