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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wbgen/calibration.hpp"
#include "wbgen/motion.hpp"
#include "wbgen/pose.hpp"

namespace wbgen {

struct PDGain {
  double k_p = 0.0;
  double k_d = 0.0;
};

/// Separate PD loops on phi_p, theta_p and l of the body pendulum.
struct PDGains {
  PDGain phi, theta, l;
  double derivative_tau = 0.02;  ///< smoothing time constant of the D term, s
  double max_angle_offset = 0.2;   ///< rad
  double max_length_offset = 0.05;  ///< m

  void validate() const;
};

struct PDState {
  bool started = false;
  std::array<double, 3> previous_error{};
  std::array<double, 3> derivative{};  ///< filtered
};

/// Offsets added to the reference pendulum (same units as PendulumState).
struct PendulumOffset {
  double phi_p = 0.0;
  double theta_p = 0.0;
  double l = 0.0;
};

/// Additive bias on one joint's output, from `start` for `duration` seconds
/// (duration 0: until the end).
struct Disturbance {
  int joint = 0;
  double start = 0.0;
  double duration = 0.0;
  double offset = 0.0;

  bool active(double t) const;
};

struct PlantParams {
  JointVector tau{};         ///< first-order time constant per joint, s; 0 = ideal
  JointVector rate_limit{};  ///< rad/s; 0 = unlimited
  std::vector<Disturbance> disturbances;

  void validate() const;
};

struct PlantState {
  double time = 0.0;
  JointVector servo{};   ///< lagged servo positions
  JointVector output{};  ///< servo plus active disturbances
};

/// Pendulum from O to a measured CoM, expressed in the heading frame.
/// Throws UndefinedPendulum when the CoM coincides with O.
PendulumState measure_pendulum(const Eigen::Vector3d& com, const Eigen::Vector3d& origin,
                               double heading = 0.0);
PendulumState measure_pendulum(const WholeBodyPose& measured, const Eigen::Vector3d& origin,
                               double heading = 0.0);

/// Offset = k_p * e + k_d * de/dt with e = reference - measured and the
/// derivative passed through a first-order filter. Each component is
/// limited by the gains' maximum offsets.
PendulumOffset pd_offset(const PendulumState& reference, const PendulumState& measured,
                         const PDGains& gains, double dt, PDState& state);

/// reference + offset, held inside the calibrated length range and outside
/// the prohibition bands.
PendulumState apply_offset(const PendulumState& reference, const PendulumOffset& offset,
                           const RobotCalibration& cal);

/// Plant at rest at `joints`.
PlantState plant_at_rest(const JointVector& joints, const PlantParams& params);

/// Advances every joint towards the command: exact first-order lag over dt,
/// then the rate limit; disturbances active at the new time are added.
PlantState simulate_step(const JointVector& command, const PlantState& state,
                         const PlantParams& params, double dt);

struct SimulationRow {
  double time = 0.0;
  Eigen::Vector3d ref_com = Eigen::Vector3d::Zero();
  Eigen::Vector3d meas_com = Eigen::Vector3d::Zero();
  double error = 0.0;
  PendulumOffset offset;
};

/// Plays `script` on the plant, one tick per sample. Each tick commands a
/// pose (corrected by the PD loop from the previous measurement when gains
/// are given), steps the plant and measures the CoM by forward kinematics
/// from the support foot. The reference CoM is that of the uncorrected pose.
std::vector<SimulationRow> closed_loop_run(const MotionScript& script,
                                           const RobotCalibration& cal,
                                           const std::optional<PDGains>& gains,
                                           const PlantParams& plant);

struct TrackingStats {
  double rms = 0.0;
  double peak = 0.0;
};
TrackingStats tracking_stats(const std::vector<SimulationRow>& rows);

/// Seconds from the start of `pulse` until the error, once the pulse has
/// ended, first drops below its level at the last tick before the pulse.
/// Empty when that never happens or the pulse lies outside the run.
std::optional<double> recovery_time(const std::vector<SimulationRow>& rows,
                                    const Disturbance& pulse);

/// `t,ref_com_*,meas_com_*,err_norm,phi_off,theta_off,l_off` rows.
std::string simulation_csv(const std::vector<SimulationRow>& rows);

/// Key-value files. Gains: kp_phi, kd_phi, kp_theta, kd_theta, kp_l, kd_l,
/// derivative_tau, max_angle_offset, max_length_offset. Plant: tau and
/// rate_limit defaults with per-joint overrides `tau.<joint>`,
/// `rate_limit.<joint>`, and disturbances `disturbance.<joint> =
/// [start, duration, offset]`.
PDGains parse_gains(const std::string& text);
PDGains load_gains(const std::filesystem::path& path);
PlantParams parse_plant(const std::string& text);
PlantParams load_plant(const std::filesystem::path& path);

}  // namespace wbgen
