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

#include "wbgen/pose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "wbgen/errors.hpp"

namespace wbgen {

namespace {

using Vec3 = Eigen::Vector3d;
using Intervals = std::vector<std::pair<double, double>>;

// Range searched for the arm spread along the direction line.
constexpr double kSpreadLimit = 1.0;
constexpr double kSoftClamp = 0.08;
// Pulls the least-violation spread towards the preferred one; the violation
// alone is flat when both arms overreach along the shoulder line.
constexpr double kTieBreak = 1e-9;
constexpr double kExtensionTolerance = 1e-9;

Intervals intersect(const Intervals& a, const Intervals& b) {
  Intervals out;
  for (const auto& [a0, a1] : a) {
    for (const auto& [b0, b1] : b) {
      const double lo = std::max(a0, b0);
      const double hi = std::min(a1, b1);
      if (lo <= hi) out.emplace_back(lo, hi);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// {x : x^2 + 2kx + c0 <= r^2}
Intervals inside_ball(double k, double c0, double r) {
  const double disc = k * k - c0 + r * r;
  if (disc < 0.0) return {};
  const double s = std::sqrt(disc);
  return {{-k - s, -k + s}};
}

// {x : x^2 + 2kx + c0 >= r^2}
Intervals outside_ball(double k, double c0, double r) {
  const double disc = k * k - c0 + r * r;
  if (disc <= 0.0) return {{-kSpreadLimit, kSpreadLimit}};
  const double s = std::sqrt(disc);
  return {{-kSpreadLimit, -k - s}, {-k + s, kSpreadLimit}};
}

// {x : slope * x >= rhs}
Intervals half_line(double slope, double rhs) {
  if (slope == 0.0) {
    return rhs <= 0.0 ? Intervals{{-kSpreadLimit, kSpreadLimit}} : Intervals{};
  }
  const double x = rhs / slope;
  return slope > 0.0 ? Intervals{{x, kSpreadLimit}} : Intervals{{-kSpreadLimit, x}};
}

// Minimum of a function on [lo, hi] by bisection on the sign of its slope;
// comparing values would only resolve it to the square root of the rounding
// error. The slope must change sign at most once on the interval.
template <typename Slope>
double refine_minimum(const Slope& slope, double lo, double hi) {
  if (slope(lo) >= 0.0) return lo;
  if (slope(hi) <= 0.0) return hi;
  while (true) {
    const double mid = (lo + hi) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (slope(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return (lo + hi) / 2.0;
}

// Representative of the intersection between the shoulder sphere (centre s,
// radius e) and the proximity sphere (centre c, radius r): the centre of the
// intersection circle. It lies on the line from c to s and degenerates to
// the tangent point or, without intersection, to the point of the shoulder
// sphere nearest to c.
Vec3 shoulder_sphere_point(const Vec3& s, double e, const Vec3& c, double r,
                           const Vec3& outward) {
  const Vec3 sc = s - c;
  const double d = sc.norm();
  if (d < 1e-12) return s + e * outward;
  const Vec3 n = sc / d;
  if (r >= d + e) return s + e * n;
  if (r + e <= d) return s - e * n;
  const double x = (d * d + r * r - e * e) / (2.0 * d);
  return c + x * n;
}

template <typename F>
auto run_stage(const char* stage, F&& f) {
  try {
    return f();
  } catch (const OutOfRange& e) {
    throw StageError(stage, e.what(), true);
  } catch (const YawUndefined& e) {
    throw StageError(stage, e.what(), true);
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e.what(), false);
  }
}

void require_outside_band(double angle, const char* field) {
  if (!std::isfinite(angle)) throw InvariantViolation(field, "must be finite");
  if (in_prohibition_band(angle)) throw InvariantViolation(field, "inside the prohibition band");
}

}  // namespace

Frame FootPose::frame() const { return {rotation_from_projected(orientation), position}; }

void PoseKeyframe::validate(const RobotCalibration& cal) const {
  if (!(c_s >= 0.0 && c_s <= 1.0)) throw InvariantViolation("c_s", "must lie in [0, 1]");
  if (!(pendulum.l > 0.0)) throw UndefinedPendulum("pendulum length must be positive");
  if (!(pendulum.l >= cal.l_B_min && pendulum.l <= cal.l_B_max)) {
    throw InvariantViolation("l_B", "outside the calibrated pendulum range");
  }
  require_outside_band(pendulum.theta_p, "theta_pB");
  require_outside_band(pendulum.phi_p, "phi_pB");
  if (!std::isfinite(pendulum.omega)) throw InvariantViolation("omega_B", "must be finite");
  require_outside_band(trunk.theta_p, "theta_pT");
  require_outside_band(trunk.phi_p, "phi_pT");
  if (!std::isfinite(trunk.psi)) throw InvariantViolation("psi_T", "must be finite");
  for (const FootPose* f : {&foot_left, &foot_right}) {
    if (!f->position.allFinite()) throw InvariantViolation("foot", "position must be finite");
    require_outside_band(f->orientation.theta_p, "foot.theta_p");
    require_outside_band(f->orientation.phi_p, "foot.phi_p");
  }
  if (!(duration >= 0.0)) throw InvariantViolation("duration", "must be non-negative");
}

Vec3 foot_contact(const FootPose& foot) { return foot.position; }

Vec3 ankle_of(const FootPose& foot, Side s, const RobotCalibration& cal) {
  const Frame f = foot.frame();
  return f.position - f.rotation * cal.foot_offset(s == Side::kLeft);
}

Vec3 pendulum_origin(const FootPose& left, const FootPose& right, double c_s) {
  return (1.0 - c_s) * foot_contact(right) + c_s * foot_contact(left);
}

Vec3 target_com(const Vec3& origin, const PendulumState& pendulum) {
  return origin + pendulum.l * zaxis_from_projected(pendulum.theta_p, pendulum.phi_p).vec();
}

TrunkPlacement place_trunk(const PoseKeyframe& kf, const Vec3& origin,
                           const RobotCalibration& cal) {
  const Vec3 z_b = zaxis_from_projected(kf.pendulum.theta_p, kf.pendulum.phi_p).vec();
  TrunkPlacement t;
  t.t_pp = origin + (kf.pendulum.l / cal.dist_body.p_l) * z_b;
  t.rotation = rotation_from_projected(kf.trunk);
  const double p_s = cal.dist_body.p_s;
  for (Side s : kSides) {
    const int i = side_index(s);
    const double y = side_sign(s);
    t.hip[i] = t.t_pp + t.rotation * Vec3(0.0, y * cal.h_w / 2.0, -p_s * cal.l_T);
    t.shoulder[i] = t.t_pp + t.rotation * Vec3(0.0, y * cal.s_w / 2.0, (1.0 - p_s) * cal.l_T);
  }
  t.hip_mid = t.t_pp + t.rotation * Vec3(0.0, 0.0, -p_s * cal.l_T);
  t.com = t.hip_mid + t.rotation * (Vec3(0.0, 0.0, cal.l_T) + cal.o_T);
  return t;
}

LegConfig place_leg(const Vec3& hip, const Frame& foot, Side s, const RobotCalibration& cal) {
  const TriangleSpec spec = cal.leg_spec();
  LegConfig leg;
  leg.hip = hip;
  leg.ankle = foot.position - foot.rotation * cal.foot_offset(s == Side::kLeft);
  const Vec3 v = hip - leg.ankle;
  const double b = v.norm();
  const double lo = extension_at_fold(spec, cal.leg_fold.min);
  const double hi = std::min(extension_at_fold(spec, cal.leg_fold.max), spec.a + spec.c);
  if (!(b >= lo && b <= hi * (1.0 + kExtensionTolerance))) {
    throw OutOfRange("hip-ankle distance " + std::to_string(b) + " not reachable", lo, hi);
  }
  leg.triangle = solve_from_extension(spec, std::min(b, spec.a + spec.c));

  const Vec3 n1 = v / b;
  const Vec3 x_foot = foot.rotation.col(0);
  const Vec3 n_y = x_foot.cross(n1);
  if (n_y.norm() < 1e-9) throw YawUndefined("foot x-axis parallel to the leg axis");
  const Vec3 n3 = n1.cross(n_y).normalized();
  const Vec3 n2 = Eigen::Quaterniond::FromTwoVectors(Vec3::UnitZ(), n1) * Vec3::UnitX();
  leg.psi = std::numbers::pi - std::atan2(n2.cross(n3).dot(n1), n3.dot(n2));
  leg.yaw = wrap_angle(cal.hip_yaw_zero - leg.psi);
  leg.plane_normal = n1.cross(n3);

  const double alpha = leg.triangle.alpha;
  leg.knee = hip + spec.c * (-std::cos(alpha) * n1 + std::sin(alpha) * n3);
  leg.com = mass_point(leg.hip, leg.knee, leg.ankle, spec.p_s, spec.p_l);
  return leg;
}

Vec3 arm_target_com(const Vec3& target, const Vec3& trunk_com, const std::array<Vec3, 2>& leg_coms,
                    const std::optional<Vec3>& occupied, const RobotCalibration& cal) {
  Vec3 free = cal.total_mass() * target - cal.m_T * trunk_com -
              cal.m_leg * (leg_coms[0] + leg_coms[1]);
  double free_mass = 2.0 * cal.m_arm;
  if (occupied) {
    free -= cal.m_arm * *occupied;
    free_mass = cal.m_arm;
  }
  return free / free_mass;
}

DualArmPlacement place_arms_dual(const Vec3& com_a, const TrunkPlacement& trunk,
                                 const RobotCalibration& cal) {
  const double e_min = cal.e_min_arm;
  const double e_max = cal.e_max_arm;
  const Eigen::Matrix3d& rt = trunk.rotation;
  const Vec3& s_l = trunk.shoulder[0];
  const Vec3& s_r = trunk.shoulder[1];

  DualArmPlacement out;
  const double r = std::min((com_a - s_l).norm(), (com_a - s_r).norm()) + e_max;
  out.intersection[0] = shoulder_sphere_point(s_l, e_max, com_a, r, rt.col(1));
  out.intersection[1] = shoulder_sphere_point(s_r, e_max, com_a, r, -rt.col(1));
  Vec3 u = out.intersection[0] - out.intersection[1];
  const double spread = u.norm() / 2.0;
  u = spread > 1e-12 ? Vec3(u.normalized()) : Vec3(rt.col(1));

  // Arm CoMs at com_a +- delta * u; collect the admissible deltas.
  const Vec3 q_l = com_a - s_l;
  const Vec3 q_r = com_a - s_r;
  const double k_l = q_l.dot(u);
  const double k_r = -q_r.dot(u);
  const double uy = rt.col(1).dot(u);
  const double cy = rt.col(1).dot(com_a - trunk.hip_mid);
  const double margin = cal.arm_y_margin;
  // The e_max balls and y-margins are convex along the line, so they leave
  // one interval; the e_min balls cut holes into it.
  Intervals convex{{-kSpreadLimit, kSpreadLimit}};
  convex = intersect(convex, inside_ball(k_l, q_l.squaredNorm(), e_max));
  convex = intersect(convex, inside_ball(k_r, q_r.squaredNorm(), e_max));
  convex = intersect(convex, half_line(uy, margin - cy));
  convex = intersect(convex, half_line(uy, margin + cy));
  Intervals feasible = intersect(convex, outside_ball(k_l, q_l.squaredNorm(), e_min));
  feasible = intersect(feasible, outside_ball(k_r, q_r.squaredNorm(), e_min));

  double delta = spread;
  if (!feasible.empty()) {
    // Soft clamp towards the middle of the convex interval: its ends move
    // like a square root as it closes, its middle does not.
    const auto [lo, hi] = convex.front();
    const double mid = (lo + hi) / 2.0;
    const double half = (hi - lo) / 2.0;
    const double reach = half * half / (half + kSoftClamp);
    const double wanted = mid + std::clamp(spread - mid, -reach, reach);
    // Then step out of any e_min hole, preferring the wider side on ties.
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [f_lo, f_hi] : feasible) {
      const double candidate = std::clamp(wanted, f_lo, f_hi);
      const double gap = std::abs(candidate - wanted);
      if (gap < best || (gap == best && candidate > delta)) {
        best = gap;
        delta = candidate;
      }
    }
  } else if (!convex.empty()) {
    // The inner shells cover the whole interval: least squared inner-shell
    // violation inside it. As the last gap between the holes closes, this
    // minimum is where the gap was.
    out.clamped = true;
    const auto [c_lo, c_hi] = convex.front();
    const auto depth = [&](double x) {
      const double d_l = std::max(0.0, e_min - (q_l + x * u).norm());
      const double d_r = std::max(0.0, e_min - (q_r - x * u).norm());
      return d_l * d_l + d_r * d_r;
    };
    const auto slope = [&](double x) {
      const Vec3 a_l = q_l + x * u;
      const Vec3 a_r = q_r - x * u;
      const double f_l = a_l.norm();
      const double f_r = a_r.norm();
      double g = 0.0;
      if (f_l < e_min) g -= 2.0 * (e_min - f_l) * a_l.dot(u) / f_l;
      if (f_r < e_min) g += 2.0 * (e_min - f_r) * a_r.dot(u) / f_r;
      return g;
    };
    constexpr int kSamples = 2000;
    const double step = (c_hi - c_lo) / kSamples;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kSamples; ++i) {
      const double x = i == kSamples ? c_hi : c_lo + step * i;
      const double v = depth(x);
      if (v < best) {
        best = v;
        delta = x;
      }
    }
    delta = refine_minimum(slope, std::max(c_lo, delta - step), std::min(c_hi, delta + step));
  } else {
    out.clamped = true;
    // Least squared violation of the outer shells and y-margins. Every term
    // is convex along the line, so the minimum is unique and moves
    // continuously with com_a; the inner shells are left to the radial
    // clamp below.
    const auto slope = [&](double x) {
      const Vec3 a_l = q_l + x * u;
      const Vec3 a_r = q_r - x * u;
      const double f_l = a_l.norm();
      const double f_r = a_r.norm();
      double g = 2.0 * kTieBreak * (x - spread);
      if (f_l > e_max) g += 2.0 * (f_l - e_max) * a_l.dot(u) / f_l;
      if (f_r > e_max) g -= 2.0 * (f_r - e_max) * a_r.dot(u) / f_r;
      g -= 2.0 * std::max(0.0, margin - (cy + x * uy)) * uy;
      g -= 2.0 * std::max(0.0, margin + (cy - x * uy)) * uy;
      return g;
    };
    delta = refine_minimum(slope, -kSpreadLimit, kSpreadLimit);
  }

  out.com[0] = com_a + delta * u;
  out.com[1] = com_a - delta * u;
  if (out.clamped) {
    for (int i = 0; i < 2; ++i) {
      const Vec3& s = trunk.shoulder[i];
      const Vec3 v = out.com[i] - s;
      const double n = v.norm();
      const double clamped = std::clamp(n, e_min, e_max);
      out.com[i] = n > 1e-12 ? Vec3(s + v * (clamped / n)) : Vec3(s - e_min * rt.col(2));
    }
  }
  return out;
}

ArmConfig arm_com_to_config(const Vec3& shoulder, const Vec3& com, const Eigen::Matrix3d& rt,
                            Side s, const RobotCalibration& cal) {
  const TriangleSpec spec = cal.arm_spec();
  const double d = (com - shoulder).norm();
  const double lo = cal.e_min_arm;
  const double hi = cal.e_max_arm;
  if (!(d >= lo * (1.0 - kExtensionTolerance) && d <= hi * (1.0 + kExtensionTolerance))) {
    throw OutOfRange("arm CoM distance " + std::to_string(d) + " not reachable", lo, hi);
  }
  ArmConfig arm;
  arm.shoulder = shoulder;
  // Near full extension the angles come out of acos(~1) and carry a square
  // root of the rounding error; use the exact straight arm instead.
  const double d_straight = spec.p_l * (spec.c + spec.p_s * spec.a);
  if (d >= d_straight * (1.0 - kExtensionTolerance)) {
    arm.triangle.b = spec.a + spec.c;
    arm.triangle.l = spec.c + spec.p_s * spec.a;
    arm.triangle.beta = std::numbers::pi;
    arm.triangle.beta1 = std::numbers::pi;
  } else {
    arm.triangle = solve_limb_triangle(spec, d);
  }
  const Vec3 m = (com - shoulder) / d;
  const double angle = cal.elbow_plane_angle;
  const Vec3 g = rt * Vec3(-std::cos(angle), side_sign(s) * std::sin(angle), 0.0);
  Vec3 e = g - g.dot(m) * m;
  if (e.norm() < 1e-6) {
    const Vec3 up = rt.col(2);
    e = up - up.dot(m) * m;
  }
  e.normalize();
  const double a1 = arm.triangle.alpha1;
  const double a2 = arm.triangle.alpha - a1;
  arm.elbow = shoulder + spec.c * (std::cos(a1) * m + std::sin(a1) * e);
  arm.wrist = shoulder + arm.triangle.b * (std::cos(a2) * m - std::sin(a2) * e);
  arm.com = mass_point(arm.shoulder, arm.elbow, arm.wrist, spec.p_s, spec.p_l);
  arm.plane_normal = m.cross(e);
  return arm;
}

JointVector joints_from_limbs(const TrunkPlacement& trunk, const std::array<LegConfig, 2>& legs,
                              const std::array<Frame, 2>& feet,
                              const std::array<ArmConfig, 2>& arms) {
  JointVector q{};
  const Eigen::Matrix3d rt_inv = trunk.rotation.transpose();
  // Signed angle of a lower link relative to its upper link about local y.
  const auto bend = [](const Eigen::Matrix3d& upper, const Vec3& lower_dir) {
    const Vec3 l = upper.transpose() * lower_dir;
    return std::atan2(-l.x(), -l.z());
  };
  const auto link_frame = [](const Vec3& dir, const Vec3& axis) {
    Eigen::Matrix3d r;
    r.col(2) = -dir;
    r.col(1) = axis;
    r.col(0) = axis.cross(r.col(2));
    return r;
  };
  for (Side s : kSides) {
    const int i = side_index(s);
    const LegConfig& leg = legs[i];
    const Eigen::Matrix3d thigh =
        link_frame((leg.knee - leg.hip).normalized(), leg.plane_normal);
    const Vec3 hip = decompose_zxy(rt_inv * thigh);
    const int lb = leg_base(s);
    q[lb] = hip[0];
    q[lb + 1] = hip[1];
    q[lb + 2] = hip[2];
    q[lb + 3] = bend(thigh, (leg.ankle - leg.knee).normalized());
    const Eigen::Matrix3d ankle = (thigh * rot_y(q[lb + 3])).transpose() * feet[i].rotation;
    q[lb + 4] = std::atan2(-ankle(2, 0), ankle(0, 0));
    q[lb + 5] = std::atan2(-ankle(1, 2), ankle(1, 1));

    const ArmConfig& arm = arms[i];
    const Eigen::Matrix3d upper =
        link_frame((arm.elbow - arm.shoulder).normalized(), arm.plane_normal);
    const Vec3 sh = decompose_yxz(rt_inv * upper);
    const int ab = arm_base(s);
    q[ab] = sh[0];
    q[ab + 1] = sh[1];
    q[ab + 2] = sh[2];
    q[ab + 3] = bend(upper, (arm.wrist - arm.elbow).normalized());
  }
  return q;
}

PoseKeyframe standby_keyframe(const RobotCalibration& cal, double l_B) {
  PoseKeyframe kf;
  kf.pendulum.l = l_B;
  for (Side s : kSides) {
    FootPose& f = s == Side::kLeft ? kf.foot_left : kf.foot_right;
    const Vec3& o = cal.foot_offset(s == Side::kLeft);
    f.position = Vec3(o.x(), side_sign(s) * cal.h_w / 2.0 + o.y(), 0.0);
  }
  return kf;
}

WholeBodyPose generate_pose(const PoseKeyframe& kf, const RobotCalibration& cal) {
  run_stage("keyframe", [&] {
    kf.validate(cal);
    return 0;
  });
  WholeBodyPose pose;
  pose.origin = pendulum_origin(kf.foot_left, kf.foot_right, kf.c_s);

  // The keyframe lives in the heading frame. Everything is solved there and
  // then turned about the vertical through O, which leaves O in place.
  const Eigen::Matrix3d rz = rot_z(kf.pendulum.omega);
  const Frame heading{rz, pose.origin - rz * pose.origin};
  pose.foot[0] = kf.foot_left.frame();
  pose.foot[1] = kf.foot_right.frame();

  pose.target_com = run_stage("target", [&] { return target_com(pose.origin, kf.pendulum); });
  pose.trunk = run_stage("trunk", [&] { return place_trunk(kf, pose.origin, cal); });
  pose.leg[0] = run_stage("left_leg", [&] {
    return place_leg(pose.trunk.hip[0], pose.foot[0], Side::kLeft, cal);
  });
  pose.leg[1] = run_stage("right_leg", [&] {
    return place_leg(pose.trunk.hip[1], pose.foot[1], Side::kRight, cal);
  });
  pose.arm_target = arm_target_com(pose.target_com, pose.trunk.com,
                                   {pose.leg[0].com, pose.leg[1].com}, std::nullopt, cal);
  const DualArmPlacement arms =
      run_stage("arms", [&] { return place_arms_dual(pose.arm_target, pose.trunk, cal); });
  pose.arms_clamped = arms.clamped;
  for (Side s : kSides) {
    const int i = side_index(s);
    pose.arm[i] = run_stage(s == Side::kLeft ? "left_arm" : "right_arm", [&] {
      return arm_com_to_config(pose.trunk.shoulder[i], arms.com[i], pose.trunk.rotation, s, cal);
    });
  }
  pose.joints = joints_from_limbs(pose.trunk, pose.leg, pose.foot, pose.arm);

  // Apply the heading to every point and frame.
  const auto turn = [&](Vec3& p) { p = heading * p; };
  turn(pose.target_com);
  turn(pose.arm_target);
  TrunkPlacement& t = pose.trunk;
  turn(t.t_pp);
  turn(t.hip_mid);
  turn(t.com);
  t.rotation = rz * t.rotation;
  for (int i = 0; i < 2; ++i) {
    turn(t.hip[i]);
    turn(t.shoulder[i]);
    for (Vec3* p : {&pose.leg[i].hip, &pose.leg[i].knee, &pose.leg[i].ankle, &pose.leg[i].com,
                    &pose.arm[i].shoulder, &pose.arm[i].elbow, &pose.arm[i].wrist,
                    &pose.arm[i].com}) {
      turn(*p);
    }
    pose.leg[i].plane_normal = rz * pose.leg[i].plane_normal;
    pose.arm[i].plane_normal = rz * pose.arm[i].plane_normal;
    pose.foot[i] = heading * pose.foot[i];
  }
  pose.com = five_mass_com(cal, t.com, {pose.leg[0].com, pose.leg[1].com},
                           {pose.arm[0].com, pose.arm[1].com});
  pose.residual_com_error = pose.target_com - pose.com;
  return pose;
}

}  // namespace wbgen
