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

#include <cstdint>
#include <random>
#include <vector>

#include "wbgen/pose.hpp"

namespace wbgen {

/// Uniform in [-1, 1). Built from the raw generator output so the sequence
/// does not depend on the standard library's distributions.
double uniform_signed(std::mt19937_64& rng);

/// Moderate keyframe around standby: feet near their nominal spots, small
/// tilts, support split within 0.5 +- 0.15.
PoseKeyframe random_keyframe(const RobotCalibration& cal, std::mt19937_64& rng);

/// Rejection-samples `n` keyframes whose arm target needs no clamping.
std::vector<PoseKeyframe> reachable_keyframes(const RobotCalibration& cal, int n,
                                              std::uint64_t seed);

}  // namespace wbgen
