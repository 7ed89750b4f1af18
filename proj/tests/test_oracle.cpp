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
#include <map>
#include <string>

#include "doctest.h"
#include "wbgen/errors.hpp"
#include "wbgen/oracle.hpp"
#include "wbgen/sampling.hpp"

using namespace wbgen;
using doctest::Approx;

namespace {

const std::string kData = WBGEN_DATA_DIR;

struct Synthetic {
  FullChainModel model = FullChainModel::load(kData + "/synthetic_model.json");
  RobotCalibration cal = derive_calibration(model, load_calibration(kData + "/igus.calib"));
};

const Synthetic& synthetic() {
  static const Synthetic s;
  return s;
}

std::vector<SweepRow> sweep(SweepParameter p, double lo, double hi, double step, double l_B) {
  const Synthetic& s = synthetic();
  return error_sweep(s.model, s.cal, {p, lo, hi, step}, standby_keyframe(s.cal, l_B));
}

// Rows of a sweep symmetric about zero: checks mirror agreement and growth
// away from zero.
void check_symmetric_growth(const std::vector<SweepRow>& rows) {
  std::map<long, double> by_step;
  for (const SweepRow& r : rows) by_step[std::lround(r.value * 1000.0)] = r.e_a;
  for (const auto& [k, e] : by_step) {
    if (k <= 0) continue;
    CAPTURE(k);
    const double mirror = by_step.at(-k);
    CHECK(std::abs(e - mirror) <= 0.05 * std::max(e, mirror));
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const SweepRow& a = rows[i - 1];
    const SweepRow& b = rows[i];
    CAPTURE(b.value);
    if (std::lround(b.value * 1000.0) <= 0) {
      CHECK(b.e_a <= a.e_a + 1e-12);
    } else {
      CHECK(b.e_a >= a.e_a - 1e-12);
    }
  }
}

}  // namespace

TEST_CASE("sweep values") {
  const std::vector<double> v = sweep_values({SweepParameter::kPendulumLength, 0.25, 0.41, 0.01});
  REQUIRE(v.size() == 17);
  CHECK(v.front() == 0.25);
  CHECK(v.back() == 0.41);
  CHECK(sweep_values({SweepParameter::kTrunkPitch, 0.1, 0.1, 0.0}) == std::vector<double>{0.1});
  CHECK(sweep_values({SweepParameter::kTrunkPitch, 0.0, 1.0, 0.3}).size() == 4);
  CHECK_THROWS_AS(sweep_values({SweepParameter::kTrunkPitch, 0.0, 1.0, 0.0}), InvalidParameter);
  CHECK_THROWS_AS(sweep_values({SweepParameter::kTrunkPitch, 1.0, 0.0, 0.1}), InvalidParameter);
}

TEST_CASE("sweep parameter names") {
  for (const char* name : {"l_B", "theta_pT", "phi_pT", "psi_T"}) {
    CHECK(sweep_parameter_name(parse_sweep_parameter(name)) == name);
  }
  CHECK_THROWS_AS(parse_sweep_parameter("omega"), InvalidParameter);
}

TEST_CASE("sweep csv") {
  const std::string csv =
      sweep_csv(SweepParameter::kTrunkYaw, {{-0.5, 0.000123456789012}, {0.25, 0.0}});
  CHECK(csv == "param_name,param_value,e_a_m\npsi_T,-0.5,0.000123456789\npsi_T,0.25,0\n");
}

TEST_CASE("point-mass model has no approximation error") {
  const RobotCalibration cal = load_calibration(kData + "/igus.calib");
  const FullChainModel model = point_mass_model(cal);
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    PoseKeyframe kf = random_keyframe(cal, rng);
    kf.pendulum.omega = 0.03 * i;
    worst = std::max(worst, approximation_error(model, cal, kf));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("approximation error ignores the heading") {
  const Synthetic& s = synthetic();
  PoseKeyframe kf = standby_keyframe(s.cal, 0.33);
  kf.trunk.theta_p = 0.2;
  const double e0 = approximation_error(s.model, s.cal, kf);
  kf.pendulum.omega = 1.3;
  CHECK(approximation_error(s.model, s.cal, kf) == Approx(e0).epsilon(1e-9));
}

TEST_CASE("synthetic model error over the pendulum length") {
  const std::vector<SweepRow> rows =
      sweep(SweepParameter::kPendulumLength, 0.25, 0.41, 0.01, 0.30);
  REQUIRE(rows.size() == 17);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(rows[i].value);
    CHECK(rows[i].e_a <= 5e-3);
    if (i > 0) CHECK(rows[i].e_a > rows[i - 1].e_a);
  }
}

TEST_CASE("synthetic model error over trunk pitch, roll and yaw") {
  for (SweepParameter p :
       {SweepParameter::kTrunkPitch, SweepParameter::kTrunkRoll, SweepParameter::kTrunkYaw}) {
    CAPTURE(sweep_parameter_name(p));
    const std::vector<SweepRow> rows = sweep(p, -0.6, 0.6, 0.05, 0.30);
    REQUIRE(rows.size() == 25);
    for (const SweepRow& r : rows) CHECK(r.e_a <= 5e-3);
    check_symmetric_growth(rows);
  }
}

TEST_CASE("bundled synthetic calibration matches a fresh derivation") {
  const RobotCalibration shipped = load_calibration(kData + "/synthetic.calib");
  CHECK(dump_calibration(shipped) == dump_calibration(synthetic().cal));
}
