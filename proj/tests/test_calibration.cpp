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

#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "wbgen/calibration.hpp"
#include "wbgen/errors.hpp"
#include "wbgen/keyvalue.hpp"

using namespace wbgen;
using doctest::Approx;

namespace {

const std::string kData = WBGEN_DATA_DIR;

RobotCalibration igus() { return load_calibration(kData + "/igus.calib"); }

std::string replace_line(std::string text, const std::string& key, const std::string& line) {
  const auto at = text.find("\n" + key + " = ");
  REQUIRE(at != std::string::npos);
  const auto end = text.find('\n', at + 1);
  return text.replace(at + 1, end - at - 1, line);
}

std::string field_of(const std::string& text) {
  try {
    parse_calibration(text);
  } catch (const InvariantViolation& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("bundled igus constants load verbatim") {
  const RobotCalibration cal = igus();
  CHECK(cal.s_w == 0.245);
  CHECK(cal.h_w == 0.11);
  CHECK(cal.l_T == 0.225);
  CHECK(cal.leg_upper == 0.1995);
  CHECK(cal.leg_lower == 0.1995);
  CHECK(cal.arm_upper == 0.17);
  CHECK(cal.arm_lower == 0.17);
  CHECK(cal.o_LF == Eigen::Vector3d(0.035, -0.011, -0.038));
  CHECK(cal.o_RF == Eigen::Vector3d(0.035, 0.011, -0.038));
  CHECK(cal.o_T == Eigen::Vector3d(0.004, 0.0, -0.0475));
  CHECK(cal.m_T == 2.373);
  CHECK(cal.m_arm == 0.554);
  CHECK(cal.m_leg == 1.332);
  CHECK(cal.dist_body.p_l == 0.7743);
  CHECK(cal.dist_body.p_s == 0.5479);
  CHECK(cal.dist_leg.p_l == 0.6159);
  CHECK(cal.dist_leg.p_s == 0.7930);
  CHECK(cal.dist_arm.p_l == 0.5608);
  CHECK(cal.dist_arm.p_s == 0.1664);
  CHECK(cal.total_mass() == Approx(6.145).epsilon(1e-12));
}

TEST_CASE("stored arm shell matches the fold limits") {
  RobotCalibration cal = igus();
  const double e_min = cal.e_min_arm;
  const double e_max = cal.e_max_arm;
  const ComRange r = effective_e_limits(cal, cal.arm_fold);
  CHECK(r.e_min == Approx(e_min).epsilon(1e-15));
  CHECK(r.e_max == Approx(e_max).epsilon(1e-15));
}

TEST_CASE("effective arm limits") {
  RobotCalibration cal = igus();
  const ComRange full = effective_e_limits(cal, {0.0, std::numbers::pi});
  CHECK(full.e_max == Approx(0.11120).epsilon(1e-4));
  CHECK(cal.e_max_arm == full.e_max);
  CHECK(cal.e_min_arm == full.e_min);

  const ComRange fixed = effective_e_limits(cal, {1.2, 1.2});
  CHECK(fixed.e_min == fixed.e_max);

  // Leg at full extension: M lies p_l * (c + p_s * a) from the hip.
  const TriangleSpec leg = igus().leg_spec();
  CHECK(forward_limb_com(leg, 0.399) == Approx(0.6159 * 0.1995 * (1.0 + 0.7930)).epsilon(1e-12));
}

TEST_CASE("save and load round trip") {
  const RobotCalibration cal = igus();
  const RobotCalibration back = parse_calibration(dump_calibration(cal));
  CHECK(dump_calibration(back) == dump_calibration(cal));
  CHECK(back.o_LF == cal.o_LF);
  CHECK(back.dist_arm.p_s == cal.dist_arm.p_s);
  CHECK(back.e_min_arm == cal.e_min_arm);
}

TEST_CASE("invariant violations name the field") {
  const std::string text = dump_calibration(igus());
  CHECK(field_of(replace_line(text, "m_T", "m_T = -1")) == "m_T");
  CHECK(field_of(replace_line(text, "h_w", "h_w = 0")) == "h_w");
  CHECK(field_of(replace_line(text, "dist_leg", "dist_leg = [0.6, 1.2]")) == "dist_leg");
  CHECK(field_of(replace_line(text, "e_max_arm", "e_max_arm = 0.5")) == "e_max_arm");
  CHECK(field_of(replace_line(text, "e_min_arm", "e_min_arm = 0.2")) == "e_max_arm");
  CHECK(field_of(replace_line(text, "o_T", "o_T = [1, 2]")) == "o_T");
  CHECK(field_of(replace_line(text, "s_w", "# s_w removed")) == "s_w");
  CHECK(field_of(text + "shoe_size = 44\n") == "shoe_size");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(KeyValueFile::parse("s_w 0.245"), ParseError);
  CHECK_THROWS_AS(KeyValueFile::parse("s_w = abc"), ParseError);
  CHECK_THROWS_AS(KeyValueFile::parse("s_w = [1, 2"), ParseError);
  CHECK_THROWS_AS(KeyValueFile::parse("a = 1\na = 2"), ParseError);
  CHECK_THROWS_AS(load_calibration(kData + "/missing.calib"), ParseError);
}

TEST_CASE("key-value syntax") {
  const KeyValueFile kv = KeyValueFile::parse(
      "# comment\n  a = 1.5   # trailing\n\nb=[1, -2.5,3e-3]\n");
  CHECK(kv.scalar("a") == 1.5);
  CHECK(kv.list("b", 3) == std::vector<double>{1.0, -2.5, 3e-3});
  CHECK_THROWS_AS(kv.list("b", 2), InvariantViolation);
  CHECK_THROWS_AS(kv.scalar("b"), InvariantViolation);
  CHECK(kv.scalar_or("c", 7.0) == 7.0);
}

TEST_CASE("shortest formatting round-trips") {
  for (double v : {0.1, 0.245, 1.0 / 3.0, -1e-300, 6.02214076e23, 0.1111999104}) {
    CHECK(std::stod(format_shortest(v)) == v);
  }
  CHECK(format_shortest(0.245) == "0.245");
  CHECK(format_shortest(-0.011) == "-0.011");
}
