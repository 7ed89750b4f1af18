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

#include <filesystem>
#include <string>
#include <vector>

#include "wbgen/calibration.hpp"
#include "wbgen/pose.hpp"

namespace wbgen {

/// Keyframes played in order. The duration of keyframe k is the time taken
/// to move from keyframe k - 1 to it; the first keyframe's is unused.
struct MotionScript {
  std::vector<PoseKeyframe> keyframes;
  double rate_hz = 100.0;

  double total_duration() const;
  /// Throws InvariantViolation unless there are two or more keyframes,
  /// every transition takes positive time and the rate is positive.
  void validate() const;
};

struct TrajectorySample {
  double time = 0.0;
  int segment = 0;  ///< index of the keyframe being moved towards
  PoseKeyframe keyframe;
  WholeBodyPose pose;
};

/// Blend of two keyframes. Scalars and positions are linear, yaw-type
/// angles take the short way round, projected-angle pairs follow the great
/// circle between their z-axes. t = 0 and t = 1 return the inputs exactly.
PoseKeyframe interpolate_keyframes(const PoseKeyframe& a, const PoseKeyframe& b, double t);

/// Sample instants k / rate for k = 0 .. ceil(total * rate).
std::vector<double> sample_times(const MotionScript& script);

/// Keyframe at `time`, held at the last keyframe past the end. Also reports
/// the segment it falls in.
PoseKeyframe keyframe_at(const MotionScript& script, double time, int* segment = nullptr);

/// Resolves every sample through generate_pose. A failing sample raises a
/// StageError naming the segment and time.
std::vector<TrajectorySample> sample_motion(const MotionScript& script,
                                            const RobotCalibration& cal);

/// `t,com_*,target_com_*,c_s,l_B,theta_pB,phi_pB,<joints>` rows.
std::string trajectory_csv(const std::vector<TrajectorySample>& samples);

PoseKeyframe parse_keyframe(const std::string& json_text);
std::string dump_keyframe(const PoseKeyframe& kf);

/// {"rate_hz": ..., "keyframes": [...]}; validated.
MotionScript parse_motion_script(const std::string& json_text);
MotionScript load_motion_script(const std::filesystem::path& path);
std::string dump_motion_script(const MotionScript& script);

}  // namespace wbgen
