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

#include "wbgen/motion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>

#include "json.hpp"
#include "wbgen/errors.hpp"
#include "wbgen/keyvalue.hpp"
#include "wbgen/rotations.hpp"

namespace wbgen {

namespace {

using nlohmann::json;
using Vec3 = Eigen::Vector3d;

// Samples closer than this to a keyframe time land on the keyframe.
constexpr double kTimeSnap = 1e-9;

double lerp(double a, double b, double t) { return a + t * (b - a); }

double lerp_angle(double a, double b, double t) {
  return wrap_angle(a + t * wrap_angle(b - a));
}

// (theta_p, phi_p) along the great circle. Identical pairs stay untouched.
void slerp_pair(double a_theta, double a_phi, double b_theta, double b_phi, double t,
                double& theta, double& phi) {
  if (a_theta == b_theta && a_phi == b_phi) {
    theta = a_theta;
    phi = a_phi;
    return;
  }
  const UnitVec3 z = slerp_zaxis(zaxis_from_projected(a_theta, a_phi, 0.0),
                                 zaxis_from_projected(b_theta, b_phi, 0.0), t);
  const ProjectedTilt tilt = projected_from_zaxis(z);
  theta = tilt.theta_p;
  phi = tilt.phi_p;
}

ProjectedOrientation interpolate_orientation(const ProjectedOrientation& a,
                                             const ProjectedOrientation& b, double t) {
  ProjectedOrientation out;
  slerp_pair(a.theta_p, a.phi_p, b.theta_p, b.phi_p, t, out.theta_p, out.phi_p);
  out.psi = lerp_angle(a.psi, b.psi, t);
  return out;
}

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw InvariantViolation(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) ==
        allowed.end()) {
      throw InvariantViolation(where + "." + key, "unknown key");
    }
  }
}

double number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw InvariantViolation(where + "." + key, "missing");
  const json& v = j.at(key);
  if (!v.is_number()) throw InvariantViolation(where + "." + key, "expected a number");
  return v.get<double>();
}

ProjectedOrientation read_orientation(const json& j, const char* yaw, const std::string& where) {
  return {number(j, "theta_p", where), number(j, "phi_p", where), number(j, yaw, where)};
}

FootPose read_foot(const json& j, const std::string& where) {
  reject_unknown(j, where, {"position", "theta_p", "phi_p", "psi"});
  FootPose f;
  if (!j.contains("position")) throw InvariantViolation(where + ".position", "missing");
  const json& p = j.at("position");
  if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() ||
      !p[2].is_number()) {
    throw InvariantViolation(where + ".position", "expected three numbers");
  }
  f.position = Vec3(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
  f.orientation = read_orientation(j, "psi", where);
  return f;
}

PoseKeyframe read_keyframe(const json& j, const std::string& where) {
  reject_unknown(j, where, {"pendulum", "trunk", "foot_left", "foot_right", "c_s", "duration"});
  for (const char* key : {"pendulum", "trunk", "foot_left", "foot_right"}) {
    if (!j.contains(key)) throw InvariantViolation(where + "." + key, "missing");
  }
  PoseKeyframe kf;
  const json& p = j.at("pendulum");
  reject_unknown(p, where + ".pendulum", {"theta_p", "phi_p", "omega", "l"});
  kf.pendulum.theta_p = number(p, "theta_p", where + ".pendulum");
  kf.pendulum.phi_p = number(p, "phi_p", where + ".pendulum");
  kf.pendulum.omega = number(p, "omega", where + ".pendulum");
  kf.pendulum.l = number(p, "l", where + ".pendulum");
  reject_unknown(j.at("trunk"), where + ".trunk", {"theta_p", "phi_p", "psi"});
  kf.trunk = read_orientation(j.at("trunk"), "psi", where + ".trunk");
  kf.foot_left = read_foot(j.at("foot_left"), where + ".foot_left");
  kf.foot_right = read_foot(j.at("foot_right"), where + ".foot_right");
  kf.c_s = number(j, "c_s", where);
  if (j.contains("duration")) kf.duration = number(j, "duration", where);
  return kf;
}

json write_orientation(const ProjectedOrientation& o, const char* yaw) {
  return {{"theta_p", o.theta_p}, {"phi_p", o.phi_p}, {yaw, o.psi}};
}

json write_keyframe(const PoseKeyframe& kf) {
  json j;
  j["pendulum"] = {{"theta_p", kf.pendulum.theta_p},
                   {"phi_p", kf.pendulum.phi_p},
                   {"omega", kf.pendulum.omega},
                   {"l", kf.pendulum.l}};
  j["trunk"] = write_orientation(kf.trunk, "psi");
  for (Side s : kSides) {
    const FootPose& f = kf.foot(s);
    json fj = write_orientation(f.orientation, "psi");
    fj["position"] = {f.position.x(), f.position.y(), f.position.z()};
    j[s == Side::kLeft ? "foot_left" : "foot_right"] = fj;
  }
  j["c_s"] = kf.c_s;
  j["duration"] = kf.duration;
  return j;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

double MotionScript::total_duration() const {
  double total = 0.0;
  for (std::size_t k = 1; k < keyframes.size(); ++k) total += keyframes[k].duration;
  return total;
}

void MotionScript::validate() const {
  if (keyframes.size() < 2) throw InvariantViolation("keyframes", "need at least two");
  for (std::size_t k = 1; k < keyframes.size(); ++k) {
    if (!(keyframes[k].duration > 0.0) || !std::isfinite(keyframes[k].duration)) {
      throw InvariantViolation("keyframes[" + std::to_string(k) + "].duration",
                               "must be positive");
    }
  }
  if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
    throw InvariantViolation("rate_hz", "must be positive");
  }
}

PoseKeyframe interpolate_keyframes(const PoseKeyframe& a, const PoseKeyframe& b, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidParameter("interpolation ratio outside [0, 1]");
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  PoseKeyframe out;
  slerp_pair(a.pendulum.theta_p, a.pendulum.phi_p, b.pendulum.theta_p, b.pendulum.phi_p, t,
             out.pendulum.theta_p, out.pendulum.phi_p);
  out.pendulum.omega = lerp_angle(a.pendulum.omega, b.pendulum.omega, t);
  out.pendulum.l = lerp(a.pendulum.l, b.pendulum.l, t);
  out.trunk = interpolate_orientation(a.trunk, b.trunk, t);
  for (Side s : kSides) {
    FootPose& f = s == Side::kLeft ? out.foot_left : out.foot_right;
    f.position = a.foot(s).position + t * (b.foot(s).position - a.foot(s).position);
    f.orientation = interpolate_orientation(a.foot(s).orientation, b.foot(s).orientation, t);
  }
  out.c_s = lerp(a.c_s, b.c_s, t);
  out.duration = lerp(a.duration, b.duration, t);
  return out;
}

std::vector<double> sample_times(const MotionScript& script) {
  script.validate();
  const double total = script.total_duration();
  const auto n = static_cast<long>(std::ceil(total * script.rate_hz - kTimeSnap));
  std::vector<double> times;
  times.reserve(n + 1);
  for (long k = 0; k <= n; ++k) times.push_back(static_cast<double>(k) / script.rate_hz);
  return times;
}

PoseKeyframe keyframe_at(const MotionScript& script, double time, int* segment) {
  const std::vector<PoseKeyframe>& kfs = script.keyframes;
  double start = 0.0;
  for (std::size_t k = 1; k < kfs.size(); ++k) {
    const double end = start + kfs[k].duration;
    if (time <= end + kTimeSnap || k + 1 == kfs.size()) {
      if (segment) *segment = static_cast<int>(k);
      if (std::abs(time - start) <= kTimeSnap) return kfs[k - 1];
      if (time >= end - kTimeSnap) return kfs[k];
      return interpolate_keyframes(kfs[k - 1], kfs[k], (time - start) / kfs[k].duration);
    }
    start = end;
  }
  if (segment) *segment = 0;
  return kfs.front();
}

std::vector<TrajectorySample> sample_motion(const MotionScript& script,
                                            const RobotCalibration& cal) {
  std::vector<TrajectorySample> samples;
  for (double t : sample_times(script)) {
    TrajectorySample s;
    s.time = t;
    s.keyframe = keyframe_at(script, t, &s.segment);
    try {
      s.pose = generate_pose(s.keyframe, cal);
    } catch (const StageError& e) {
      char where[64];
      std::snprintf(where, sizeof(where), "segment %d, t=%.9g s, ", s.segment, t);
      throw StageError(where + e.stage(), e.what(), e.infeasible());
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

std::string trajectory_csv(const std::vector<TrajectorySample>& samples) {
  std::string out =
      "t,com_x,com_y,com_z,target_com_x,target_com_y,target_com_z,c_s,l_B,theta_pB,phi_pB";
  for (int j = 0; j < kNumJoints; ++j) {
    out += ",";
    out += joint_name(j);
  }
  out += "\n";
  char buf[32];
  const auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), ",%.9g", v == 0.0 ? 0.0 : v);
    out += buf;
  };
  for (const TrajectorySample& s : samples) {
    std::snprintf(buf, sizeof(buf), "%.9g", s.time);
    out += buf;
    for (int i = 0; i < 3; ++i) put(s.pose.com[i]);
    for (int i = 0; i < 3; ++i) put(s.pose.target_com[i]);
    put(s.keyframe.c_s);
    put(s.keyframe.pendulum.l);
    put(s.keyframe.pendulum.theta_p);
    put(s.keyframe.pendulum.phi_p);
    for (double q : s.pose.joints) put(q);
    out += "\n";
  }
  return out;
}

PoseKeyframe parse_keyframe(const std::string& json_text) {
  try {
    return read_keyframe(parse_json(json_text), "keyframe");
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

std::string dump_keyframe(const PoseKeyframe& kf) { return write_keyframe(kf).dump(2) + "\n"; }

MotionScript parse_motion_script(const std::string& json_text) {
  const json doc = parse_json(json_text);
  MotionScript script;
  try {
    reject_unknown(doc, "script", {"rate_hz", "keyframes"});
    script.rate_hz = number(doc, "rate_hz", "script");
    if (!doc.contains("keyframes") || !doc.at("keyframes").is_array()) {
      throw InvariantViolation("keyframes", "expected an array");
    }
    for (const json& j : doc.at("keyframes")) {
      script.keyframes.push_back(
          read_keyframe(j, "keyframes[" + std::to_string(script.keyframes.size()) + "]"));
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  script.validate();
  return script;
}

MotionScript load_motion_script(const std::filesystem::path& path) {
  return parse_motion_script(read_text_file(path));
}

std::string dump_motion_script(const MotionScript& script) {
  json j;
  j["rate_hz"] = script.rate_hz;
  j["keyframes"] = json::array();
  for (const PoseKeyframe& kf : script.keyframes) j["keyframes"].push_back(write_keyframe(kf));
  return j.dump(2) + "\n";
}

}  // namespace wbgen
