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

#include "wbgen/calibration.hpp"

#include <cmath>
#include <fstream>

#include "wbgen/errors.hpp"
#include "wbgen/keyvalue.hpp"

namespace wbgen {

namespace {

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvariantViolation(field, "must be positive");
}

void require_finite(const Eigen::Vector3d& v, const char* field) {
  if (!v.allFinite()) throw InvariantViolation(field, "must be finite");
}

void require_distribution(const Distribution& d, const char* field) {
  if (!(d.p_l > 0.0 && d.p_l < 1.0) || !(d.p_s > 0.0 && d.p_s < 1.0)) {
    throw InvariantViolation(field, "p_l and p_s must lie in (0, 1)");
  }
}

Eigen::Vector3d vec3(const KeyValueFile& kv, const char* key) {
  const auto v = kv.list(key, 3);
  return {v[0], v[1], v[2]};
}

Distribution pair(const KeyValueFile& kv, const char* key) {
  const auto v = kv.list(key, 2);
  return {v[0], v[1]};
}

}  // namespace

void RobotCalibration::validate() const {
  require_positive(s_w, "s_w");
  require_positive(h_w, "h_w");
  require_positive(l_T, "l_T");
  require_positive(leg_upper, "leg_upper");
  require_positive(leg_lower, "leg_lower");
  require_positive(arm_upper, "arm_upper");
  require_positive(arm_lower, "arm_lower");
  require_finite(o_LF, "o_LF");
  require_finite(o_RF, "o_RF");
  require_finite(o_T, "o_T");
  require_positive(m_T, "m_T");
  require_positive(m_arm, "m_arm");
  require_positive(m_leg, "m_leg");
  require_distribution(dist_body, "dist_body");
  require_distribution(dist_leg, "dist_leg");
  require_distribution(dist_arm, "dist_arm");
  require_positive(e_min_arm, "e_min_arm");
  if (!(e_min_arm < e_max_arm)) throw InvariantViolation("e_max_arm", "must exceed e_min_arm");
  if (e_max_arm > arm_upper + arm_lower) {
    throw InvariantViolation("e_max_arm", "exceeds arm length");
  }
  if (!(arm_y_margin >= 0.0)) throw InvariantViolation("arm_y_margin", "must be non-negative");
  require_positive(l_B_min, "l_B_min");
  if (!(l_B_min < l_B_max)) throw InvariantViolation("l_B_max", "must exceed l_B_min");
}

RobotCalibration parse_calibration(const std::string& text) {
  const KeyValueFile kv = KeyValueFile::parse(text);
  RobotCalibration cal;
  cal.s_w = kv.scalar("s_w");
  cal.h_w = kv.scalar("h_w");
  cal.l_T = kv.scalar("l_T");
  cal.leg_upper = kv.scalar("leg_upper");
  cal.leg_lower = kv.scalar("leg_lower");
  cal.arm_upper = kv.scalar("arm_upper");
  cal.arm_lower = kv.scalar("arm_lower");
  cal.o_LF = vec3(kv, "o_LF");
  cal.o_RF = vec3(kv, "o_RF");
  cal.o_T = vec3(kv, "o_T");
  cal.m_T = kv.scalar("m_T");
  cal.m_arm = kv.scalar("m_arm");
  cal.m_leg = kv.scalar("m_leg");
  cal.dist_body = pair(kv, "dist_body");
  cal.dist_leg = pair(kv, "dist_leg");
  cal.dist_arm = pair(kv, "dist_arm");
  cal.e_min_arm = kv.scalar("e_min_arm");
  cal.e_max_arm = kv.scalar("e_max_arm");
  cal.arm_y_margin = kv.scalar_or("arm_y_margin", cal.arm_y_margin);
  cal.l_B_min = kv.scalar_or("l_B_min", cal.l_B_min);
  cal.l_B_max = kv.scalar_or("l_B_max", cal.l_B_max);
  if (const auto unused = kv.unused_keys(); !unused.empty()) {
    throw InvariantViolation(unused.front(), "unknown key");
  }
  cal.validate();
  return cal;
}

RobotCalibration load_calibration(const std::filesystem::path& path) {
  return parse_calibration(read_text_file(path));
}

std::string dump_calibration(const RobotCalibration& cal) {
  KeyValueFile kv;
  auto v3 = [](const Eigen::Vector3d& v) { return std::vector<double>{v.x(), v.y(), v.z()}; };
  auto p2 = [](const Distribution& d) { return std::vector<double>{d.p_l, d.p_s}; };
  kv.set("s_w", cal.s_w);
  kv.set("h_w", cal.h_w);
  kv.set("l_T", cal.l_T);
  kv.set("leg_upper", cal.leg_upper);
  kv.set("leg_lower", cal.leg_lower);
  kv.set("arm_upper", cal.arm_upper);
  kv.set("arm_lower", cal.arm_lower);
  kv.set("o_LF", v3(cal.o_LF));
  kv.set("o_RF", v3(cal.o_RF));
  kv.set("o_T", v3(cal.o_T));
  kv.set("m_T", cal.m_T);
  kv.set("m_arm", cal.m_arm);
  kv.set("m_leg", cal.m_leg);
  kv.set("dist_body", p2(cal.dist_body));
  kv.set("dist_leg", p2(cal.dist_leg));
  kv.set("dist_arm", p2(cal.dist_arm));
  kv.set("e_min_arm", cal.e_min_arm);
  kv.set("e_max_arm", cal.e_max_arm);
  kv.set("arm_y_margin", cal.arm_y_margin);
  kv.set("l_B_min", cal.l_B_min);
  kv.set("l_B_max", cal.l_B_max);
  return kv.dump();
}

void save_calibration(const RobotCalibration& cal, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot write " + path.string());
  out << dump_calibration(cal);
}

ComRange effective_e_limits(RobotCalibration& cal, const FoldLimits& fold) {
  const ComRange range = limb_com_range(cal.arm_spec(), fold);
  cal.e_min_arm = range.e_min;
  cal.e_max_arm = range.e_max;
  cal.arm_fold = fold;
  return range;
}

}  // namespace wbgen
