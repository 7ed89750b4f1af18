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

#include <algorithm>
#include <cmath>
#include <string>

#include "doctest.h"
#include "wbgen/errors.hpp"
#include "wbgen/full_chain.hpp"
#include "wbgen/skeleton.hpp"
#include "wbgen/stabilization.hpp"

using namespace wbgen;
using doctest::Approx;

namespace {

const std::string kData = WBGEN_DATA_DIR;

const RobotCalibration& igus() {
  static const RobotCalibration cal = load_calibration(kData + "/igus.calib");
  return cal;
}

const MotionScript& kick() {
  static const MotionScript s = load_motion_script(kData + "/kick.json");
  return s;
}

PendulumState pendulum(double phi, double theta, double l) {
  PendulumState p;
  p.phi_p = phi;
  p.theta_p = theta;
  p.l = l;
  return p;
}

PDGains p_only(double kp) {
  PDGains g;
  g.phi.k_p = g.theta.k_p = g.l.k_p = kp;
  g.max_angle_offset = g.max_length_offset = 10.0;
  return g;
}

}  // namespace

TEST_CASE("measured pendulum of a CoM above the origin") {
  const PendulumState p = measure_pendulum(Eigen::Vector3d(0, 0, 0.3), Eigen::Vector3d::Zero());
  CHECK(p.phi_p == 0.0);
  CHECK(p.theta_p == 0.0);
  CHECK(p.l == Approx(0.3).epsilon(1e-15));
  CHECK_THROWS_AS(measure_pendulum(Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(1, 2, 3)),
                  UndefinedPendulum);
}

TEST_CASE("measured pendulum is expressed in the heading frame") {
  const Eigen::Vector3d origin(0.1, -0.2, 0.05);
  const Eigen::Vector3d forward(0.03, 0.0, 0.29);
  const double heading = 0.7;
  const Eigen::Vector3d world =
      origin + Eigen::Vector3d(std::cos(heading) * forward.x(), std::sin(heading) * forward.x(),
                               forward.z());
  const PendulumState a = measure_pendulum(origin + forward, origin);
  const PendulumState b = measure_pendulum(world, origin, heading);
  CHECK(b.theta_p == Approx(a.theta_p).epsilon(1e-12));
  CHECK(std::abs(b.phi_p) < 1e-12);
  CHECK(b.omega == heading);
}

TEST_CASE("pd offset with zero error is zero") {
  PDState state;
  const PDGains g = p_only(2.0);
  const PendulumState ref = pendulum(0.1, -0.05, 0.3);
  for (int k = 0; k < 5; ++k) {
    const PendulumOffset o = pd_offset(ref, ref, g, 0.01, state);
    CHECK(o.phi_p == 0.0);
    CHECK(o.theta_p == 0.0);
    CHECK(o.l == 0.0);
  }
}

TEST_CASE("proportional term is k_p times the error") {
  PDState state;
  const PendulumOffset o =
      pd_offset(pendulum(0.1, 0.2, 0.3), pendulum(0.05, 0.25, 0.28), p_only(0.7), 0.01, state);
  CHECK(o.phi_p == Approx(0.7 * 0.05).epsilon(1e-14));
  CHECK(o.theta_p == Approx(-0.7 * 0.05).epsilon(1e-14));
  CHECK(o.l == Approx(0.7 * 0.02).epsilon(1e-14));
}

TEST_CASE("derivative of an error step decays exponentially") {
  PDGains g;
  g.theta.k_d = 1.0;
  g.derivative_tau = 0.05;
  g.max_angle_offset = 100.0;
  const double dt = 0.01;
  const double keep = std::exp(-dt / g.derivative_tau);
  const double step = 0.02;
  PDState state;
  const PendulumState ref = pendulum(0, 0, 0.3);
  CHECK(pd_offset(ref, ref, g, dt, state).theta_p == 0.0);
  double expected = (1.0 - keep) * step / dt;
  const PendulumState stepped = pendulum(0, step, 0.3);
  for (int k = 0; k < 20; ++k) {
    const double d = pd_offset(stepped, ref, g, dt, state).theta_p;
    CHECK(d == Approx(expected).epsilon(1e-12));
    expected *= keep;
  }
}

TEST_CASE("offsets are limited") {
  PDGains g = p_only(1.0);
  g.max_angle_offset = 0.01;
  g.max_length_offset = 0.002;
  PDState state;
  const PendulumOffset o =
      pd_offset(pendulum(0.5, -0.5, 0.4), pendulum(0, 0, 0.3), g, 0.01, state);
  CHECK(o.phi_p == 0.01);
  CHECK(o.theta_p == -0.01);
  CHECK(o.l == 0.002);

  const PendulumState held = apply_offset(pendulum(0, 0, 0.3), {0, 0, 1.0}, igus());
  CHECK(held.l == igus().l_B_max);
}

TEST_CASE("ideal plant follows the command") {
  PlantParams params;
  JointVector q{};
  PlantState s = plant_at_rest(q, params);
  JointVector cmd{};
  for (int j = 0; j < kNumJoints; ++j) cmd[j] = 0.01 * (j + 1);
  s = simulate_step(cmd, s, params, 0.01);
  CHECK(s.output == cmd);
}

TEST_CASE("lagged plant matches the first-order step response") {
  PlantParams params;
  params.tau.fill(0.1);
  PlantState s = plant_at_rest(JointVector{}, params);
  JointVector cmd{};
  cmd.fill(1.0);
  const double dt = 0.001;
  for (int k = 1; k <= 500; ++k) {
    s = simulate_step(cmd, s, params, dt);
    const double t = k * dt;
    CHECK(std::abs(s.output[3] - (1.0 - std::exp(-t / 0.1))) < 1e-6);
  }
}

TEST_CASE("rate limit slows a step") {
  PlantParams params;
  params.rate_limit.fill(1.0);
  PlantState s = plant_at_rest(JointVector{}, params);
  JointVector cmd{};
  cmd.fill(1.0);
  int ticks = 0;
  while (s.output[0] < 1.0 - 1e-12) {
    s = simulate_step(cmd, s, params, 0.01);
    ++ticks;
    REQUIRE(ticks < 1000);
  }
  CHECK(ticks * 0.01 >= 1.0 - 1e-9);
}

TEST_CASE("disturbance is a bias on the output") {
  PlantParams params;
  params.disturbances.push_back({2, 0.02, 0.02, 0.1});
  PlantState s = plant_at_rest(JointVector{}, params);
  const JointVector zero{};
  s = simulate_step(zero, s, params, 0.01);
  CHECK(s.output[2] == 0.0);
  s = simulate_step(zero, s, params, 0.01);
  CHECK(s.output[2] == 0.1);
  CHECK(s.servo[2] == 0.0);
  s = simulate_step(zero, s, params, 0.01);
  CHECK(s.output[2] == 0.1);
  s = simulate_step(zero, s, params, 0.01);
  CHECK(s.output[2] == 0.0);
}

TEST_CASE("zero gains reproduce the open loop") {
  const PlantParams plant = load_plant(kData + "/plant_lagged.cfg");
  PDGains zero;
  const auto open = closed_loop_run(kick(), igus(), std::nullopt, plant);
  const auto closed = closed_loop_run(kick(), igus(), zero, plant);
  REQUIRE(open.size() == closed.size());
  for (std::size_t i = 0; i < open.size(); ++i) {
    CHECK(open[i].meas_com == closed[i].meas_com);
  }
}

TEST_CASE("perfect plant tracks exactly with and without feedback") {
  const PlantParams plant = load_plant(kData + "/plant_perfect.cfg");
  const PDGains gains = load_gains(kData + "/gains.cfg");
  const auto open = closed_loop_run(kick(), igus(), std::nullopt, plant);
  const auto closed = closed_loop_run(kick(), igus(), gains, plant);
  CHECK(tracking_stats(open).peak <= 1e-9);
  CHECK(tracking_stats(closed).peak <= 1e-9);
}

TEST_CASE("feedback improves tracking on the lagged plant") {
  const PlantParams plant = load_plant(kData + "/plant_lagged.cfg");
  const PDGains gains = load_gains(kData + "/gains.cfg");
  const auto open = closed_loop_run(kick(), igus(), std::nullopt, plant);
  const auto closed = closed_loop_run(kick(), igus(), gains, plant);
  const TrackingStats so = tracking_stats(open);
  const TrackingStats sc = tracking_stats(closed);
  CHECK(sc.rms < so.rms);
  CHECK(sc.peak < so.peak);
  REQUIRE(plant.disturbances.size() == 1);
  const auto recovery = recovery_time(closed, plant.disturbances.front());
  REQUIRE(recovery.has_value());
  CHECK(*recovery <= 2.0);
}

TEST_CASE("recovery time") {
  std::vector<SimulationRow> rows(10);
  const double errors[] = {0.1, 0.1, 0.5, 0.6, 0.3, 0.2, 0.05, 0.01, 0.01, 0.01};
  for (int i = 0; i < 10; ++i) {
    rows[i].time = 0.1 * i;
    rows[i].error = errors[i];
  }
  const auto r = recovery_time(rows, {0, 0.2, 0.2, 1.0});
  REQUIRE(r.has_value());
  CHECK(*r == Approx(0.4));
  CHECK_FALSE(recovery_time(rows, {0, 5.0, 0.1, 1.0}).has_value());
  CHECK_FALSE(recovery_time(rows, {0, 0.0, 0.1, 1.0}).has_value());
}

TEST_CASE("gain and plant files") {
  const PDGains g = load_gains(kData + "/gains.cfg");
  CHECK(g.theta.k_p == 0.9);
  CHECK_THROWS_AS(parse_gains("kp_phi = 1\n"), InvariantViolation);
  CHECK_THROWS_AS(
      parse_gains("kp_phi = 1\nkd_phi = 0\nkp_theta = 1\nkd_theta = 0\nkp_l = 1\nkd_l = 0\n"
                  "gain = 3\n"),
      InvariantViolation);
  CHECK_THROWS_AS(parse_gains("kp_phi 1\n"), ParseError);

  const PlantParams p = parse_plant(
      "tau = 0.05\nrate_limit = 4\ntau.left_knee = 0.2\n"
      "disturbance.right_ankle_roll = [1, 0, -0.01]\n");
  const int knee = joint_index("left_knee");
  CHECK(p.tau[knee] == 0.2);
  CHECK(p.tau[0] == 0.05);
  CHECK(p.rate_limit[knee] == 4.0);
  REQUIRE(p.disturbances.size() == 1);
  CHECK(p.disturbances[0].joint == joint_index("right_ankle_roll"));
  CHECK(p.disturbances[0].offset == -0.01);
  CHECK_THROWS_AS(parse_plant("tau = 0.05\ntau.elbow = 0.1\n"), InvariantViolation);
  CHECK_THROWS_AS(parse_plant("tau = -1\n"), InvariantViolation);
  CHECK_THROWS_AS(parse_plant("rate_limit = 1\n"), InvariantViolation);
  CHECK_THROWS_AS(parse_plant("tau = 0\ndisturbance.left_knee = [1, 2]\n"), InvariantViolation);
}

TEST_CASE("simulation csv") {
  const PlantParams plant = load_plant(kData + "/plant_lagged.cfg");
  const auto rows = closed_loop_run(kick(), igus(), std::nullopt, plant);
  const std::string csv = simulation_csv(rows);
  CHECK(csv.rfind("t,ref_com_x,ref_com_y,ref_com_z,meas_com_x,meas_com_y,meas_com_z,err_norm,"
                  "phi_off,theta_off,l_off\n",
                  0) == 0);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == rows.size() + 1);
}

TEST_CASE("perfect plant leaves the offsets at zero") {
  const PlantParams plant = load_plant(kData + "/plant_perfect.cfg");
  const auto rows = closed_loop_run(kick(), igus(), load_gains(kData + "/gains.cfg"), plant);
  double worst = 0.0;
  for (const SimulationRow& r : rows) {
    worst = std::max({worst, std::abs(r.offset.phi_p), std::abs(r.offset.theta_p),
                      std::abs(r.offset.l)});
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("measured pendulum of a lagged pose matches a point-mass chain") {
  const RobotCalibration& cal = igus();
  const FullChainModel model = point_mass_model(cal);
  PlantParams plant = load_plant(kData + "/plant_lagged.cfg");
  const PoseKeyframe a = kick().keyframes[1];
  const PoseKeyframe b = kick().keyframes[4];
  const WholeBodyPose from = generate_pose(a, cal);
  const WholeBodyPose to = generate_pose(b, cal);
  PlantState s = plant_at_rest(from.joints, plant);
  for (int k = 0; k < 7; ++k) {
    s = simulate_step(to.joints, s, plant, 0.01);
    const BodyPoints body = forward_skeleton_anchored(cal, s.output, Side::kLeft, to.foot[0]);
    const Eigen::Vector3d brute = model.com(model.link_frames(body.trunk, s.output));
    const PendulumState p = measure_pendulum(body.com, to.origin);
    const PendulumState q = measure_pendulum(brute, to.origin);
    CHECK(std::abs(p.theta_p - q.theta_p) < 1e-12);
    CHECK(std::abs(p.phi_p - q.phi_p) < 1e-12);
    CHECK(std::abs(p.l - q.l) < 1e-12);
  }
}
