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

// wbgen: pose generation, motion sampling, error sweeps, calibration and
// closed-loop simulation from the command line.
//
// Exit codes: 0 success, 2 bad input, 3 infeasible computation.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wbgen/calibration.hpp"
#include "wbgen/errors.hpp"
#include "wbgen/full_chain.hpp"
#include "wbgen/keyvalue.hpp"
#include "wbgen/motion.hpp"
#include "wbgen/oracle.hpp"
#include "wbgen/pose.hpp"
#include "wbgen/sampling.hpp"
#include "wbgen/skeleton.hpp"
#include "wbgen/stabilization.hpp"

namespace {

using namespace wbgen;
using json = nlohmann::ordered_json;

constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr std::uint64_t kDefaultSeed = 2026;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidParameter("cannot write " + path);
  out << text;
}

json vec(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

json pose_json(const WholeBodyPose& pose, const RobotCalibration& cal) {
  json j;
  j["origin"] = vec(pose.origin);
  j["target_com"] = vec(pose.target_com);
  j["com"] = vec(pose.com);
  j["residual_com_error"] = vec(pose.residual_com_error);
  j["residual_norm"] = pose.residual_com_error.norm();
  j["arms_clamped"] = pose.arms_clamped;
  const auto point = [](const Eigen::Vector3d& p, double m) {
    return json{{"position", vec(p)}, {"mass", m}};
  };
  json points;
  points["trunk"] = point(pose.trunk.com, cal.m_T);
  points["left_leg"] = point(pose.leg[0].com, cal.m_leg);
  points["right_leg"] = point(pose.leg[1].com, cal.m_leg);
  points["left_arm"] = point(pose.arm[0].com, cal.m_arm);
  points["right_arm"] = point(pose.arm[1].com, cal.m_arm);
  j["mass_points"] = points;
  json joints;
  for (int i = 0; i < kNumJoints; ++i) joints[std::string(joint_name(i))] = pose.joints[i];
  j["joints"] = joints;
  return j;
}

SweepSpec parse_range(SweepParameter p, const std::string& text) {
  SweepSpec spec;
  spec.parameter = p;
  if (p != SweepParameter::kPendulumLength) {
    spec.lo = -0.6;
    spec.hi = 0.6;
    spec.step = 0.05;
  }
  if (text.empty()) return spec;
  std::vector<double> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ':')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != item.size()) throw InvalidParameter("bad --range '" + text + "'");
    parts.push_back(v);
  }
  if (parts.size() != 3) throw InvalidParameter("--range expects a:b:step");
  spec.lo = parts[0];
  spec.hi = parts[1];
  spec.step = parts[2];
  return spec;
}

struct PoseArgs {
  std::string calib, keyframe, script, out;
  int index = 0;
};

int run_pose(const PoseArgs& a) {
  const RobotCalibration cal = load_calibration(a.calib);
  PoseKeyframe kf;
  if (!a.keyframe.empty()) {
    kf = parse_keyframe(read_text_file(a.keyframe));
  } else {
    const MotionScript script = load_motion_script(a.script);
    if (a.index < 0 || a.index >= static_cast<int>(script.keyframes.size())) {
      throw InvalidParameter("--index " + std::to_string(a.index) + " outside the script");
    }
    kf = script.keyframes[a.index];
  }
  write_output(a.out, pose_json(generate_pose(kf, cal), cal).dump(2) + "\n");
  return 0;
}

struct MotionArgs {
  std::string calib, script, out;
  std::optional<double> rate;
};

int run_motion(const MotionArgs& a) {
  const RobotCalibration cal = load_calibration(a.calib);
  MotionScript script = load_motion_script(a.script);
  if (a.rate) script.rate_hz = *a.rate;
  write_output(a.out, trajectory_csv(sample_motion(script, cal)));
  return 0;
}

struct SweepArgs {
  std::string model, calib, param, range, out;
  double l_B = 0.30;
  int random = 0;
  std::uint64_t seed = kDefaultSeed;
};

int run_sweep(const SweepArgs& a) {
  const FullChainModel model = FullChainModel::load(a.model);
  const RobotCalibration cal = load_calibration(a.calib);
  const SweepParameter p = parse_sweep_parameter(a.param);
  const SweepSpec spec = parse_range(p, a.range);
  if (a.random <= 0) {
    write_output(a.out, sweep_csv(p, error_sweep(model, cal, spec, standby_keyframe(cal, a.l_B))));
    return 0;
  }
  // One sweep per random base keyframe; rows are prefixed by the sample.
  std::string text = "sample," + sweep_csv(p, {});
  int sample = 0;
  for (const PoseKeyframe& base : reachable_keyframes(cal, a.random, a.seed)) {
    const std::string csv = sweep_csv(p, error_sweep(model, cal, spec, base));
    std::stringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) text += std::to_string(sample) + "," + line + "\n";
    ++sample;
  }
  write_output(a.out, text);
  return 0;
}

struct CalibrateArgs {
  std::string model, base, out;
};

int run_calibrate(const CalibrateArgs& a) {
  const FullChainModel model = FullChainModel::load(a.model);
  const RobotCalibration base = a.base.empty() ? RobotCalibration{} : load_calibration(a.base);
  write_output(a.out, dump_calibration(derive_calibration(model, base)));
  return 0;
}

struct SimulateArgs {
  std::string calib, script, plant, gains, out;
};

int run_simulate(const SimulateArgs& a) {
  const RobotCalibration cal = load_calibration(a.calib);
  const MotionScript script = load_motion_script(a.script);
  const PlantParams plant = load_plant(a.plant);
  std::optional<PDGains> gains;
  if (!a.gains.empty()) gains = load_gains(a.gains);
  const std::vector<SimulationRow> rows = closed_loop_run(script, cal, gains, plant);
  const TrackingStats stats = tracking_stats(rows);
  std::fprintf(stderr, "%s loop: rms %.6g m, peak %.6g m\n", gains ? "closed" : "open",
               stats.rms, stats.peak);
  write_output(a.out, simulation_csv(rows));
  return 0;
}

int exit_code(const std::exception& e) {
  if (const auto* stage = dynamic_cast<const StageError*>(&e)) {
    return stage->infeasible() ? kExitInfeasible : kExitInput;
  }
  if (dynamic_cast<const InvalidParameter*>(&e) || dynamic_cast<const JointMismatch*>(&e)) {
    return kExitInput;
  }
  if (dynamic_cast<const Error*>(&e)) return kExitInfeasible;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whole-body pose generation for humanoid robots"};
  app.require_subcommand(1);

  PoseArgs pose;
  auto* cmd_pose = app.add_subcommand("pose", "Solve one keyframe and write the pose as JSON");
  cmd_pose->add_option("--calib", pose.calib, "Calibration file")->required();
  auto* kf_opt = cmd_pose->add_option("--keyframe", pose.keyframe, "Keyframe JSON");
  auto* script_opt = cmd_pose->add_option("--script", pose.script, "Motion script JSON");
  cmd_pose->add_option("--index", pose.index, "Keyframe index within --script")
      ->needs(script_opt);
  kf_opt->excludes(script_opt);
  cmd_pose->add_option("-o,--out", pose.out, "Output file (default stdout)");

  MotionArgs motion;
  auto* cmd_motion = app.add_subcommand("motion", "Sample a motion script into a CSV trajectory");
  cmd_motion->add_option("--calib", motion.calib, "Calibration file")->required();
  cmd_motion->add_option("--script", motion.script, "Motion script JSON")->required();
  cmd_motion->add_option("--rate", motion.rate, "Override the sample rate, Hz");
  cmd_motion->add_option("-o,--out", motion.out, "Output file (default stdout)");

  SweepArgs sweep;
  auto* cmd_sweep =
      app.add_subcommand("sweep", "Approximation error against a full-chain model");
  cmd_sweep->add_option("--model", sweep.model, "Full-chain model JSON")->required();
  cmd_sweep->add_option("--calib", sweep.calib, "Calibration file")->required();
  cmd_sweep->add_option("--param", sweep.param, "l_B, theta_pT, phi_pT or psi_T")->required();
  cmd_sweep->add_option("--range", sweep.range, "lo:hi:step");
  cmd_sweep->add_option("--l-b", sweep.l_B, "Pendulum length of the base keyframe, m");
  cmd_sweep->add_option("--random", sweep.random, "Sweep around this many random keyframes");
  cmd_sweep->add_option("--seed", sweep.seed, "Seed for --random");
  cmd_sweep->add_option("-o,--out", sweep.out, "Output file (default stdout)");

  CalibrateArgs calibrate;
  auto* cmd_calibrate =
      app.add_subcommand("calibrate", "Derive calibration parameters from a full-chain model");
  cmd_calibrate->add_option("--model", calibrate.model, "Full-chain model JSON")->required();
  cmd_calibrate->add_option("--base", calibrate.base,
                            "Calibration supplying margins and the pendulum range");
  cmd_calibrate->add_option("-o,--out", calibrate.out, "Output file (default stdout)");

  SimulateArgs simulate;
  auto* cmd_simulate =
      app.add_subcommand("simulate", "Play a script on the servo plant, optionally with feedback");
  cmd_simulate->add_option("--calib", simulate.calib, "Calibration file")->required();
  cmd_simulate->add_option("--script", simulate.script, "Motion script JSON")->required();
  cmd_simulate->add_option("--plant", simulate.plant, "Plant configuration")->required();
  cmd_simulate->add_option("--gains", simulate.gains, "PD gains; open loop when omitted");
  cmd_simulate->add_option("-o,--out", simulate.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*cmd_pose) {
      if (pose.keyframe.empty() && pose.script.empty()) {
        throw InvalidParameter("pose needs --keyframe or --script");
      }
      return run_pose(pose);
    }
    if (*cmd_motion) return run_motion(motion);
    if (*cmd_sweep) return run_sweep(sweep);
    if (*cmd_calibrate) return run_calibrate(calibrate);
    if (*cmd_simulate) return run_simulate(simulate);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  }
  return 0;
}
