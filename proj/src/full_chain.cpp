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

#include "wbgen/full_chain.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "wbgen/errors.hpp"
#include "wbgen/keyvalue.hpp"

namespace wbgen {

namespace {

using Vec3 = Eigen::Vector3d;
using nlohmann::json;

constexpr double kPi = std::numbers::pi;

Vec3 read_vec3(const json& j, const char* key, const std::string& link) {
  if (!j.contains(key)) return Vec3::Zero();
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 3) {
    throw InvariantViolation(link + "." + key, "expected three numbers");
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

json write_vec3(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

BodyPart limb_part(const std::string& name) {
  if (name == "left_hip_yaw") return BodyPart::kLeftLeg;
  if (name == "right_hip_yaw") return BodyPart::kRightLeg;
  if (name == "left_shoulder_pitch") return BodyPart::kLeftArm;
  if (name == "right_shoulder_pitch") return BodyPart::kRightArm;
  return BodyPart::kTrunk;
}

Vec3 position(const FullChainModel& model, const std::vector<Frame>& frames,
              const std::string& link) {
  return frames[model.index(link)].position;
}

// Inverts the triangle construction: finds (p_l, p_s) such that the mass
// point of ABC lies at the distance and angle of `m` as seen from A.
Distribution invert_triangle(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& m,
                             const char* part) {
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 am = m - a;
  const Vec3 u = ab.normalized();
  const Vec3 w = (ac - ac.dot(u) * u).normalized();
  const double d = am.norm();
  if (d == 0.0) throw CalibrationInfeasible(std::string(part) + ": CoM at the origin joint");
  const double along = am.dot(u);
  const double across = std::sqrt(std::max(0.0, d * d - along * along));
  if (am.dot(w) < -1e-12) {
    throw CalibrationInfeasible(std::string(part) + ": CoM on the far side of the upper link");
  }
  Eigen::Matrix2d basis;
  basis << ab.norm(), ac.dot(u) - ab.norm(), 0.0, ac.dot(w);
  const Eigen::Vector2d k = basis.colPivHouseholderQr().solve(Eigen::Vector2d(along, across));
  const double p_l = k[0];
  const double p_s = k[1] / k[0];
  constexpr double kTol = 1e-12;
  if (!(p_l > 0.0 && p_l <= 1.0 + kTol && p_s >= -kTol && p_s <= 1.0 + kTol)) {
    throw CalibrationInfeasible(std::string(part) + ": CoM outside the triangle (p_l = " +
                                std::to_string(p_l) + ", p_s = " + std::to_string(p_s) + ")");
  }
  return {std::min(p_l, 1.0), std::clamp(p_s, 0.0, 1.0)};
}

Distribution agree(const Distribution& l, const Distribution& r, const char* part) {
  if (std::abs(l.p_l - r.p_l) > 1e-9 || std::abs(l.p_s - r.p_s) > 1e-9) {
    throw CalibrationInfeasible(std::string(part) + ": left and right limbs differ");
  }
  return l;
}

}  // namespace

FullChainModel::FullChainModel(std::string name, std::vector<ChainLink> links)
    : name_(std::move(name)), links_(std::move(links)) {
  validate();
}

void FullChainModel::validate() {
  const int n = static_cast<int>(links_.size());
  parent_index_.assign(n, -1);
  joint_.assign(n, -1);
  parts_.assign(n, BodyPart::kTrunk);
  if (n == 0) throw InvariantViolation("links", "model has no links");
  std::vector<bool> seen(kNumJoints, false);
  for (int i = 0; i < n; ++i) {
    ChainLink& link = links_[i];
    if (link.name.empty()) throw InvariantViolation("links", "link without a name");
    for (int j = 0; j < i; ++j) {
      if (links_[j].name == link.name) throw InvariantViolation(link.name, "duplicate link name");
    }
    if (i == 0) {
      if (!link.parent.empty()) throw InvariantViolation(link.name, "first link must be the root");
    } else {
      if (link.parent.empty()) throw InvariantViolation(link.name, "second root link");
      for (int j = 0; j < i; ++j) {
        if (links_[j].name == link.parent) parent_index_[i] = j;
      }
      if (parent_index_[i] < 0) {
        throw InvariantViolation(link.name, "parent '" + link.parent + "' not defined before it");
      }
    }
    if (!(link.mass >= 0.0) || !std::isfinite(link.mass)) {
      throw InvariantViolation(link.name + ".mass", "must be non-negative");
    }
    if (link.movable()) {
      if (std::abs(link.axis.norm() - 1.0) > 1e-9) {
        throw InvariantViolation(link.name + ".axis", "must be unit length or zero");
      }
      if (i == 0) throw InvariantViolation(link.name, "root link cannot move");
      joint_[i] = joint_index(link.name);
      if (joint_[i] < 0) throw JointMismatch("model joint '" + link.name + "' has no pose joint");
      seen[joint_[i]] = true;
    }
    const BodyPart own = limb_part(link.name);
    parts_[i] = (own != BodyPart::kTrunk || i == 0) ? own : parts_[parent_index_[i]];
    if (parts_[i] == BodyPart::kTrunk && link.movable()) {
      throw InvariantViolation(link.name, "movable link outside the limbs");
    }
  }
  for (int j = 0; j < kNumJoints; ++j) {
    if (!seen[j]) {
      throw JointMismatch("pose joint '" + std::string(joint_name(j)) + "' missing from model");
    }
  }
}

FullChainModel FullChainModel::parse(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  try {
    std::vector<ChainLink> links;
    for (const json& j : doc.at("links")) {
      ChainLink link;
      link.name = j.at("name").get<std::string>();
      if (j.contains("parent") && !j.at("parent").is_null()) {
        link.parent = j.at("parent").get<std::string>();
      }
      link.axis = read_vec3(j, "axis", link.name);
      link.translation = read_vec3(j, "translation", link.name);
      link.mass = j.value("mass", 0.0);
      link.com_offset = read_vec3(j, "com_offset", link.name);
      links.push_back(std::move(link));
    }
    return FullChainModel(doc.value("name", std::string{}), std::move(links));
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

FullChainModel FullChainModel::load(const std::filesystem::path& path) {
  return parse(read_text_file(path));
}

std::string FullChainModel::dump() const {
  json links = json::array();
  for (const ChainLink& l : links_) {
    links.push_back({{"name", l.name},
                     {"parent", l.parent.empty() ? json(nullptr) : json(l.parent)},
                     {"axis", write_vec3(l.axis)},
                     {"translation", write_vec3(l.translation)},
                     {"mass", l.mass},
                     {"com_offset", write_vec3(l.com_offset)}});
  }
  return json{{"name", name_}, {"links", links}}.dump(2) + "\n";
}

int FullChainModel::index(const std::string& link) const {
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (links_[i].name == link) return static_cast<int>(i);
  }
  throw InvalidParameter("model has no link '" + link + "'");
}

std::vector<Frame> FullChainModel::link_frames(const Frame& root, const JointVector& q) const {
  std::vector<Frame> frames(links_.size());
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const ChainLink& link = links_[i];
    Frame local;
    local.position = link.translation;
    if (joint_[i] >= 0) {
      local.rotation = Eigen::AngleAxisd(q[joint_[i]], link.axis).toRotationMatrix();
    }
    frames[i] = (parent_index_[i] < 0 ? root : frames[parent_index_[i]]) * local;
  }
  return frames;
}

Vec3 FullChainModel::com(const std::vector<Frame>& frames) const {
  Vec3 sum = Vec3::Zero();
  double mass = 0.0;
  for (std::size_t i = 0; i < links_.size(); ++i) {
    sum += links_[i].mass * (frames[i] * links_[i].com_offset);
    mass += links_[i].mass;
  }
  return sum / mass;
}

Vec3 FullChainModel::com(const std::vector<Frame>& frames, BodyPart part) const {
  Vec3 sum = Vec3::Zero();
  double mass = 0.0;
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (parts_[i] != part) continue;
    sum += links_[i].mass * (frames[i] * links_[i].com_offset);
    mass += links_[i].mass;
  }
  if (mass == 0.0) throw CalibrationInfeasible("body part without mass");
  return sum / mass;
}

double FullChainModel::mass(BodyPart part) const {
  double mass = 0.0;
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (parts_[i] == part) mass += links_[i].mass;
  }
  return mass;
}

double FullChainModel::total_mass() const {
  double mass = 0.0;
  for (const ChainLink& l : links_) mass += l.mass;
  return mass;
}

void FullChainModel::check_masses(const RobotCalibration& cal) const {
  const auto check = [](double got, double want, const char* field) {
    if (std::abs(got - want) > 1e-9) {
      throw InvariantViolation(field, "model mass " + std::to_string(got) +
                                          " differs from calibration " + std::to_string(want));
    }
  };
  check(mass(BodyPart::kTrunk), cal.m_T, "m_T");
  check(mass(BodyPart::kLeftLeg), cal.m_leg, "m_leg");
  check(mass(BodyPart::kRightLeg), cal.m_leg, "m_leg");
  check(mass(BodyPart::kLeftArm), cal.m_arm, "m_arm");
  check(mass(BodyPart::kRightArm), cal.m_arm, "m_arm");
}

FullChainModel point_mass_model(const RobotCalibration& cal) {
  std::vector<ChainLink> links;
  const auto add = [&](std::string name, std::string parent, Vec3 axis, Vec3 translation,
                       double mass = 0.0) {
    links.push_back({std::move(name), std::move(parent), axis, translation, mass, Vec3::Zero()});
  };
  const Vec3 none = Vec3::Zero();
  add("trunk", "", none, none);
  add("trunk_mass", "trunk", none, Vec3(0.0, 0.0, cal.l_T) + cal.o_T, cal.m_T);
  // Limb masses: end share p_l p_s at the end vertex, the rest on the upper
  // link where it restores the p_l lever.
  const auto limb = [&](const std::string& upper, const std::string& lower, double upper_len,
                        double lower_len, const Distribution& d, double mass) {
    const double end_share = d.p_l * d.p_s;
    const double upper_frac = d.p_l * (1.0 - d.p_s) / (1.0 - end_share);
    add(upper + "_mass", upper, none, Vec3(0.0, 0.0, -upper_frac * upper_len),
        (1.0 - end_share) * mass);
    add(lower + "_mass", lower, none, Vec3(0.0, 0.0, -lower_len), end_share * mass);
  };
  for (Side s : kSides) {
    const std::string p = s == Side::kLeft ? "left_" : "right_";
    add(p + "hip_yaw", "trunk", Vec3::UnitZ(), hip_in_trunk(cal, s));
    add(p + "hip_roll", p + "hip_yaw", Vec3::UnitX(), none);
    add(p + "hip_pitch", p + "hip_roll", Vec3::UnitY(), none);
    add(p + "knee", p + "hip_pitch", Vec3::UnitY(), Vec3(0.0, 0.0, -cal.leg_upper));
    limb(p + "hip_pitch", p + "knee", cal.leg_upper, cal.leg_lower, cal.dist_leg, cal.m_leg);
    add(p + "ankle_pitch", p + "knee", Vec3::UnitY(), Vec3(0.0, 0.0, -cal.leg_lower));
    add(p + "ankle_roll", p + "ankle_pitch", Vec3::UnitX(), none);
    add(p + "foot", p + "ankle_roll", none, cal.foot_offset(s == Side::kLeft));
    add(p + "shoulder_pitch", "trunk", Vec3::UnitY(), shoulder_in_trunk(cal, s));
    add(p + "shoulder_roll", p + "shoulder_pitch", Vec3::UnitX(), none);
    add(p + "shoulder_yaw", p + "shoulder_roll", Vec3::UnitZ(), none);
    add(p + "elbow", p + "shoulder_yaw", Vec3::UnitY(), Vec3(0.0, 0.0, -cal.arm_upper));
    limb(p + "shoulder_yaw", p + "elbow", cal.arm_upper, cal.arm_lower, cal.dist_arm, cal.m_arm);
    add(p + "wrist", p + "elbow", none, Vec3(0.0, 0.0, -cal.arm_lower));
  }
  return FullChainModel("point_mass", std::move(links));
}

JointVector calibration_joints(bool body) {
  JointVector q{};
  for (Side s : kSides) {
    if (body) {
      q[leg_base(s) + 2] = -kPi / 2.0;
      q[arm_base(s)] = -kPi / 2.0;
    } else {
      q[leg_base(s) + 3] = kPi / 2.0;
      q[arm_base(s) + 3] = -kPi / 2.0;
    }
  }
  return q;
}

Frame body_calibration_root() { return {Eigen::AngleAxisd(kPi / 2.0, Vec3::UnitY()).toRotationMatrix(), Vec3::Zero()}; }

DistributionSet calibrate_distribution(const FullChainModel& model) {
  DistributionSet out;
  const std::vector<Frame> limbs = model.link_frames(Frame{}, calibration_joints(false));
  const auto limb = [&](const char* side, const char* a, const char* b, const char* c,
                        BodyPart part) {
    const std::string s(side);
    return invert_triangle(position(model, limbs, s + a), position(model, limbs, s + b),
                           position(model, limbs, s + c), model.com(limbs, part),
                           (s + a).c_str());
  };
  out.leg = agree(limb("left_", "hip_yaw", "knee", "ankle_pitch", BodyPart::kLeftLeg),
                  limb("right_", "hip_yaw", "knee", "ankle_pitch", BodyPart::kRightLeg), "leg");
  out.arm = agree(limb("left_", "shoulder_pitch", "elbow", "wrist", BodyPart::kLeftArm),
                  limb("right_", "shoulder_pitch", "elbow", "wrist", BodyPart::kRightArm), "arm");

  // Body triangle: foot-centre midpoint, hip midpoint, shoulder midpoint.
  const Frame root = body_calibration_root();
  const std::vector<Frame> body = model.link_frames(root, calibration_joints(true));
  const Vec3 origin = 0.5 * (position(model, body, "left_foot") + position(model, body, "right_foot"));
  const Vec3 hip = 0.5 * (position(model, body, "left_hip_yaw") + position(model, body, "right_hip_yaw"));
  const Vec3 shoulder =
      0.5 * (position(model, body, "left_shoulder_pitch") + position(model, body, "right_shoulder_pitch"));
  const Vec3 com = model.com(body);
  // Pivot: where the line origin -> CoM crosses the spine.
  Eigen::Matrix<double, 3, 2> lines;
  lines.col(0) = com - origin;
  lines.col(1) = hip - shoulder;
  const Eigen::Vector2d st = lines.colPivHouseholderQr().solve(hip - origin);
  const Vec3 pivot = origin + st[0] * (com - origin);
  if ((pivot - (hip + st[1] * (shoulder - hip))).norm() > 1e-9) {
    throw CalibrationInfeasible("body: CoM line misses the spine");
  }
  const double p_s = st[1];
  const double p_l = 1.0 / st[0];
  if (!(st[0] >= 1.0 - 1e-12 && p_s >= -1e-12 && p_s <= 1.0 + 1e-12)) {
    throw CalibrationInfeasible("body: CoM outside the triangle (p_l = " + std::to_string(p_l) +
                                ", p_s = " + std::to_string(p_s) + ")");
  }
  out.body = {std::min(p_l, 1.0), std::clamp(p_s, 0.0, 1.0)};
  return out;
}

RobotCalibration derive_calibration(const FullChainModel& model, const RobotCalibration& base) {
  RobotCalibration cal = base;
  const std::vector<Frame> zero = model.link_frames(Frame{}, JointVector{});
  const auto at = [&](const std::string& link) { return position(model, zero, link); };
  const auto vertical = [](const Vec3& top, const Vec3& bottom, const std::string& what) {
    const Vec3 d = top - bottom;
    if (d.head<2>().norm() > 1e-12 || d.z() <= 0.0) {
      throw InvalidParameter(what + ": links must hang along -z at zero joints");
    }
    return d.z();
  };
  const Vec3 hip_l = at("left_hip_yaw");
  const Vec3 hip_r = at("right_hip_yaw");
  const Vec3 sh_l = at("left_shoulder_pitch");
  const Vec3 sh_r = at("right_shoulder_pitch");
  if ((hip_l + hip_r).norm() > 1e-12 || hip_l.x() != 0.0 || hip_l.z() != 0.0) {
    throw InvalidParameter("hips must sit symmetrically on the root y-axis");
  }
  if (std::abs(sh_l.y() + sh_r.y()) > 1e-12 || sh_l.x() != 0.0 || sh_r.x() != 0.0 ||
      sh_l.z() != sh_r.z()) {
    throw InvalidParameter("shoulders must sit symmetrically above the hips");
  }
  cal.h_w = hip_l.y() - hip_r.y();
  cal.s_w = sh_l.y() - sh_r.y();
  cal.l_T = sh_l.z();
  cal.leg_upper = vertical(hip_l, at("left_knee"), "leg");
  cal.leg_lower = vertical(at("left_knee"), at("left_ankle_pitch"), "leg");
  cal.arm_upper = vertical(sh_l, at("left_elbow"), "arm");
  cal.arm_lower = vertical(at("left_elbow"), at("left_wrist"), "arm");
  cal.o_LF = at("left_foot") - at("left_ankle_pitch");
  cal.o_RF = at("right_foot") - at("right_ankle_pitch");
  cal.m_T = model.mass(BodyPart::kTrunk);
  cal.m_leg = model.mass(BodyPart::kLeftLeg);
  cal.m_arm = model.mass(BodyPart::kLeftArm);
  cal.o_T = model.com(zero, BodyPart::kTrunk) - Vec3(0.0, 0.0, cal.l_T);
  const DistributionSet dist = calibrate_distribution(model);
  cal.dist_body = dist.body;
  cal.dist_leg = dist.leg;
  cal.dist_arm = dist.arm;
  effective_e_limits(cal, base.arm_fold);
  model.check_masses(cal);
  cal.validate();
  return cal;
}

}  // namespace wbgen
