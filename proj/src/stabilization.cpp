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

#include "wbgen/stabilization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wbgen/errors.hpp"
#include "wbgen/keyvalue.hpp"
#include "wbgen/rotations.hpp"
#include "wbgen/skeleton.hpp"

namespace wbgen {

namespace {

using Vec3 = Eigen::Vector3d;

constexpr double kTimeTolerance = 1e-9;

int joint_of(const std::string& key, const std::string& prefix) {
  const int j = joint_index(key.substr(prefix.size()));
  if (j < 0) throw InvariantViolation(key, "unknown joint");
  return j;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

void reject_unused(const KeyValueFile& kv) {
  if (const auto unused = kv.unused_keys(); !unused.empty()) {
    throw InvariantViolation(unused.front(), "unknown key");
  }
}

StageError at_time(const StageError& e, int segment, double t) {
  char where[64];
  std::snprintf(where, sizeof(where), "segment %d, t=%.9g s, ", segment, t);
  return StageError(where + e.stage(), e.what(), e.infeasible());
}

}  // namespace

void PDGains::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"kp_phi", phi.k_p}, {"kd_phi", phi.k_d}, {"kp_theta", theta.k_p},
      {"kd_theta", theta.k_d}, {"kp_l", l.k_p}, {"kd_l", l.k_d},
      {"max_angle_offset", max_angle_offset}, {"max_length_offset", max_length_offset}};
  for (const auto& [name, v] : fields) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvariantViolation(name, "must be non-negative");
  }
  if (!(derivative_tau > 0.0) || !std::isfinite(derivative_tau)) {
    throw InvariantViolation("derivative_tau", "must be positive");
  }
}

bool Disturbance::active(double t) const {
  return t >= start - kTimeTolerance &&
         (duration <= 0.0 || t < start + duration - kTimeTolerance);
}

void PlantParams::validate() const {
  for (int j = 0; j < kNumJoints; ++j) {
    const std::string name(joint_name(j));
    if (!(tau[j] >= 0.0) || !std::isfinite(tau[j])) {
      throw InvariantViolation("tau." + name, "must be non-negative");
    }
    if (!(rate_limit[j] >= 0.0) || !std::isfinite(rate_limit[j])) {
      throw InvariantViolation("rate_limit." + name, "must be non-negative");
    }
  }
  for (const Disturbance& d : disturbances) {
    if (d.joint < 0 || d.joint >= kNumJoints) throw InvariantViolation("disturbance", "bad joint");
    if (!std::isfinite(d.start) || !std::isfinite(d.offset) || !(d.duration >= 0.0)) {
      throw InvariantViolation("disturbance." + std::string(joint_name(d.joint)),
                               "expected [start, duration >= 0, offset]");
    }
  }
}

PendulumState measure_pendulum(const Vec3& com, const Vec3& origin, double heading) {
  const Vec3 v = rot_z(-heading) * (com - origin);
  const double l = v.norm();
  if (!(l > 1e-12)) throw UndefinedPendulum("CoM coincides with the pendulum origin");
  const ProjectedTilt tilt = projected_from_zaxis(UnitVec3::normalized(v));
  PendulumState p;
  p.phi_p = tilt.phi_p;
  p.theta_p = tilt.theta_p;
  p.omega = heading;
  p.l = l;
  return p;
}

PendulumState measure_pendulum(const WholeBodyPose& measured, const Vec3& origin,
                               double heading) {
  return measure_pendulum(measured.com, origin, heading);
}

PendulumOffset pd_offset(const PendulumState& reference, const PendulumState& measured,
                         const PDGains& gains, double dt, PDState& state) {
  if (!(dt > 0.0)) throw InvalidParameter("dt must be positive");
  const std::array<double, 3> error{reference.phi_p - measured.phi_p,
                                    reference.theta_p - measured.theta_p,
                                    reference.l - measured.l};
  if (!state.started) {
    state.started = true;
    state.previous_error = error;
    state.derivative = {};
  }
  const double keep = std::exp(-dt / gains.derivative_tau);
  const PDGain* g[3] = {&gains.phi, &gains.theta, &gains.l};
  const double limit[3] = {gains.max_angle_offset, gains.max_angle_offset,
                           gains.max_length_offset};
  double out[3];
  for (int i = 0; i < 3; ++i) {
    const double raw = (error[i] - state.previous_error[i]) / dt;
    state.derivative[i] = keep * state.derivative[i] + (1.0 - keep) * raw;
    state.previous_error[i] = error[i];
    out[i] = std::clamp(g[i]->k_p * error[i] + g[i]->k_d * state.derivative[i], -limit[i],
                        limit[i]);
  }
  return {out[0], out[1], out[2]};
}

PendulumState apply_offset(const PendulumState& reference, const PendulumOffset& offset,
                           const RobotCalibration& cal) {
  PendulumState p = reference;
  p.phi_p = clamp_to_prohibition_band(reference.phi_p + offset.phi_p);
  p.theta_p = clamp_to_prohibition_band(reference.theta_p + offset.theta_p);
  p.l = std::clamp(reference.l + offset.l, cal.l_B_min, cal.l_B_max);
  return p;
}

PlantState plant_at_rest(const JointVector& joints, const PlantParams& params) {
  PlantState s;
  s.servo = joints;
  s.output = joints;
  for (const Disturbance& d : params.disturbances) {
    if (d.active(0.0)) s.output[d.joint] += d.offset;
  }
  return s;
}

PlantState simulate_step(const JointVector& command, const PlantState& state,
                         const PlantParams& params, double dt) {
  if (!(dt > 0.0)) throw InvalidParameter("dt must be positive");
  PlantState next;
  next.time = state.time + dt;
  for (int j = 0; j < kNumJoints; ++j) {
    const double from = state.servo[j];
    double to = command[j];
    if (params.tau[j] > 0.0) to += (from - command[j]) * std::exp(-dt / params.tau[j]);
    if (params.rate_limit[j] > 0.0) {
      const double max_step = params.rate_limit[j] * dt;
      to = std::clamp(to, from - max_step, from + max_step);
    }
    next.servo[j] = to;
  }
  next.output = next.servo;
  for (const Disturbance& d : params.disturbances) {
    if (d.active(next.time)) next.output[d.joint] += d.offset;
  }
  return next;
}

std::vector<SimulationRow> closed_loop_run(const MotionScript& script,
                                           const RobotCalibration& cal,
                                           const std::optional<PDGains>& gains,
                                           const PlantParams& plant) {
  script.validate();
  plant.validate();
  if (gains) gains->validate();
  const double dt = 1.0 / script.rate_hz;
  const std::vector<double> times = sample_times(script);

  std::vector<SimulationRow> rows;
  rows.reserve(times.size());
  PDState pd;
  PlantState state;
  PendulumState last_ref, last_meas;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    int segment = 0;
    const PoseKeyframe kf = keyframe_at(script, t, &segment);
    SimulationRow row;
    row.time = t;
    try {
      const WholeBodyPose ref = generate_pose(kf, cal);
      if (k == 0) {
        state = plant_at_rest(ref.joints, plant);
      } else {
        JointVector command = ref.joints;
        if (gains) {
          row.offset = pd_offset(last_ref, last_meas, *gains, dt, pd);
          PoseKeyframe corrected = kf;
          corrected.pendulum = apply_offset(kf.pendulum, row.offset, cal);
          command = generate_pose(corrected, cal).joints;
        }
        state = simulate_step(command, state, plant, dt);
        state.time = t;
      }
      const Side support = kf.c_s >= 0.5 ? Side::kLeft : Side::kRight;
      const BodyPoints measured =
          forward_skeleton_anchored(cal, state.output, support, ref.foot[side_index(support)]);
      row.ref_com = ref.com;
      row.meas_com = measured.com;
      row.error = (row.meas_com - row.ref_com).norm();
      last_ref = measure_pendulum(ref.com, ref.origin, kf.pendulum.omega);
      last_meas = measure_pendulum(measured.com, ref.origin, kf.pendulum.omega);
    } catch (const StageError& e) {
      throw at_time(e, segment, t);
    }
    rows.push_back(row);
  }
  return rows;
}

TrackingStats tracking_stats(const std::vector<SimulationRow>& rows) {
  TrackingStats s;
  if (rows.empty()) return s;
  double sum = 0.0;
  for (const SimulationRow& r : rows) {
    sum += r.error * r.error;
    s.peak = std::max(s.peak, r.error);
  }
  s.rms = std::sqrt(sum / static_cast<double>(rows.size()));
  return s;
}

std::optional<double> recovery_time(const std::vector<SimulationRow>& rows,
                                    const Disturbance& pulse) {
  std::size_t k = 0;
  while (k < rows.size() && rows[k].time < pulse.start - kTimeTolerance) ++k;
  if (k == 0 || k == rows.size()) return std::nullopt;
  const double before = rows[k - 1].error;
  const double end = pulse.start + pulse.duration;
  for (std::size_t i = k; i < rows.size(); ++i) {
    if (rows[i].time >= end - kTimeTolerance && rows[i].error < before) {
      return rows[i].time - pulse.start;
    }
  }
  return std::nullopt;
}

std::string simulation_csv(const std::vector<SimulationRow>& rows) {
  std::string out =
      "t,ref_com_x,ref_com_y,ref_com_z,meas_com_x,meas_com_y,meas_com_z,err_norm,phi_off,"
      "theta_off,l_off\n";
  char buf[48];
  const auto put = [&](double v, bool first = false) {
    std::snprintf(buf, sizeof(buf), first ? "%.9g" : ",%.9g", v == 0.0 ? 0.0 : v);
    out += buf;
  };
  for (const SimulationRow& r : rows) {
    put(r.time, true);
    for (int i = 0; i < 3; ++i) put(r.ref_com[i]);
    for (int i = 0; i < 3; ++i) put(r.meas_com[i]);
    put(r.error);
    put(r.offset.phi_p);
    put(r.offset.theta_p);
    put(r.offset.l);
    out += "\n";
  }
  return out;
}

PDGains parse_gains(const std::string& text) {
  const KeyValueFile kv = KeyValueFile::parse(text);
  PDGains g;
  g.phi = {kv.scalar("kp_phi"), kv.scalar("kd_phi")};
  g.theta = {kv.scalar("kp_theta"), kv.scalar("kd_theta")};
  g.l = {kv.scalar("kp_l"), kv.scalar("kd_l")};
  g.derivative_tau = kv.scalar_or("derivative_tau", g.derivative_tau);
  g.max_angle_offset = kv.scalar_or("max_angle_offset", g.max_angle_offset);
  g.max_length_offset = kv.scalar_or("max_length_offset", g.max_length_offset);
  reject_unused(kv);
  g.validate();
  return g;
}

PDGains load_gains(const std::filesystem::path& path) {
  return parse_gains(read_text_file(path));
}

PlantParams parse_plant(const std::string& text) {
  const KeyValueFile kv = KeyValueFile::parse(text);
  PlantParams p;
  p.tau.fill(kv.scalar("tau"));
  p.rate_limit.fill(kv.scalar_or("rate_limit", 0.0));
  for (const auto& [key, values] : kv.entries()) {
    if (starts_with(key, "tau.")) {
      p.tau[joint_of(key, "tau.")] = kv.scalar(key);
    } else if (starts_with(key, "rate_limit.")) {
      p.rate_limit[joint_of(key, "rate_limit.")] = kv.scalar(key);
    } else if (starts_with(key, "disturbance.")) {
      const std::vector<double> v = kv.list(key, 3);
      p.disturbances.push_back({joint_of(key, "disturbance."), v[0], v[1], v[2]});
    }
  }
  reject_unused(kv);
  p.validate();
  return p;
}

PlantParams load_plant(const std::filesystem::path& path) {
  return parse_plant(read_text_file(path));
}

}  // namespace wbgen
