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

#include "wbgen/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "wbgen/errors.hpp"

using namespace wbgen;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Test-only oracle: invert the coordinate construction by bisection on b.
double bisect_extension(const TriangleSpec& spec, double d) {
  double lo = std::abs(spec.a - spec.c);
  double hi = spec.a + spec.c;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (forward_limb_com(spec, mid) < d) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

const TriangleSpec kLeg{0.1995, 0.1995, 0.7930, 0.6159};
const TriangleSpec kArm{0.17, 0.17, 0.1664, 0.5608};

}  // namespace

TEST_CASE("centroid line length") {
  CHECK(centroid_line_length(0.2, 2.0 / 3.0) == Approx(0.3).epsilon(1e-15));
  CHECK(centroid_line_length(0.0, 0.5) == 0.0);
  CHECK(centroid_line_length(0.18431, 0.6159) == Approx(0.29925).epsilon(1e-5));
  // Fully extended leg with a 0.5 side split.
  const TriangleSpec leg{0.1995, 0.1995, 0.5, 0.6159};
  const double d = forward_limb_com(leg, 0.399);
  CHECK(centroid_line_length(d, 0.6159) == Approx(0.29925).epsilon(1e-12));
  CHECK_THROWS_AS(centroid_line_length(0.1, 0.0), InvalidParameter);
  CHECK_THROWS_AS(centroid_line_length(0.1, -0.5), InvalidParameter);
}

TEST_CASE("forward limb com from coordinates") {
  const TriangleSpec unit{1.0, 1.0, 0.5, 2.0 / 3.0};
  CHECK(forward_limb_com(unit, std::sqrt(2.0)) == Approx(std::sqrt(5.0) / 3.0).epsilon(1e-14));
  const TriangleSpec straight{1.0, 1.0, 0.5, 1.0};
  CHECK(forward_limb_com(straight, 2.0) == Approx(1.5).epsilon(1e-15));
  CHECK_THROWS_AS(forward_limb_com(unit, 2.5), InvalidParameter);
  CHECK_THROWS_AS(forward_limb_com(TriangleSpec{1.0, 0.5, 0.5, 0.5}, 0.2), InvalidParameter);
}

TEST_CASE("solve right-angled unit triangle") {
  const TriangleSpec unit{1.0, 1.0, 0.5, 2.0 / 3.0};
  const TriangleSolution s = solve_limb_triangle(unit, std::sqrt(5.0) / 3.0);
  CHECK(s.b == Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(s.alpha == Approx(kPi / 4.0).epsilon(1e-12));
  CHECK(s.beta == Approx(kPi / 2.0).epsilon(1e-12));
  CHECK(s.gamma == Approx(kPi / 4.0).epsilon(1e-12));
  CHECK(s.l == Approx(std::sqrt(5.0) / 2.0).epsilon(1e-12));
  CHECK(s.beta1 == Approx(s.beta).epsilon(1e-12));
}

TEST_CASE("solve fully extended leg") {
  const TriangleSpec leg{0.1995, 0.1995, 0.5, 0.6159};
  const double d_max = 0.6159 * 0.1995 * 1.5;
  const TriangleSolution s = solve_limb_triangle(leg, d_max);
  CHECK(s.b == Approx(0.399).epsilon(1e-9));
  CHECK(s.beta == Approx(kPi).epsilon(1e-6));
  CHECK(s.gamma == Approx(0.0).epsilon(1e-6));

  // The rounded target from the reference tables sits just inside the limit.
  const TriangleSolution r = solve_limb_triangle(leg, 0.184307);
  CHECK(r.b == Approx(bisect_extension(leg, 0.184307)).epsilon(1e-9));
  CHECK(std::abs(r.b - 0.399) < 1e-3);
}

TEST_CASE("unreachable distance reports the feasible interval") {
  try {
    solve_limb_triangle(kLeg, 0.5);
    FAIL("expected OutOfRange");
  } catch (const OutOfRange& e) {
    CHECK(e.lo() == Approx(0.6159 * std::abs(0.1995 - 0.7930 * 0.1995)));
    CHECK(e.hi() == Approx(0.6159 * (0.1995 + 0.7930 * 0.1995)));
  }
  CHECK_THROWS_AS(solve_limb_triangle(kLeg, 0.001), OutOfRange);
  CHECK_THROWS_AS(solve_limb_triangle(TriangleSpec{0.1, 0.1, 1.2, 0.5}, 0.05), InvalidParameter);
}

TEST_CASE("igus leg parameters round trip against the coordinate oracle") {
  std::mt19937_64 rng(7);
  const double lo = kLeg.p_l * std::abs(kLeg.c - kLeg.p_s * kLeg.a);
  const double hi = kLeg.p_l * (kLeg.c + kLeg.p_s * kLeg.a);
  std::uniform_real_distribution<double> dist(lo, hi);
  for (int i = 0; i < 1000; ++i) {
    const double d = dist(rng);
    const TriangleSolution s = solve_limb_triangle(kLeg, d);
    CHECK(std::abs(forward_limb_com(kLeg, s.b) - d) <= 1e-9);
    CHECK(std::abs(s.alpha + s.beta + s.gamma - kPi) <= 1e-9);
    CHECK(std::abs(s.alpha1 + s.beta1 + s.gamma1 - kPi) <= 1e-9);
    CHECK(s.b > 0.0);
    CHECK(s.b <= kLeg.a + kLeg.c);
    // triangle inequality on (p_s a, l, c)
    CHECK(s.l <= kLeg.p_s * kLeg.a + kLeg.c + 1e-12);
    CHECK(s.l >= std::abs(kLeg.c - kLeg.p_s * kLeg.a) - 1e-12);
  }
}

TEST_CASE("distance is strictly increasing in extension") {
  const TriangleSpec specs[] = {kLeg, kArm, TriangleSpec{0.3, 0.1, 0.4, 0.9}};
  for (const auto& spec : specs) {
    const double lo = std::abs(spec.a - spec.c);
    const double hi = spec.a + spec.c;
    double prev = forward_limb_com(spec, lo);
    for (int i = 1; i <= 500; ++i) {
      const double d = forward_limb_com(spec, lo + (hi - lo) * i / 500.0);
      CHECK(d > prev);
      prev = d;
    }
  }
}

TEST_CASE("uniform density reproduces the geometric centroid") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Vector3d a(u(rng), u(rng), u(rng));
    const Eigen::Vector3d b(u(rng), u(rng), u(rng));
    const Eigen::Vector3d c(u(rng), u(rng), u(rng));
    const Eigen::Vector3d m = mass_point(a, b, c, 0.5, 2.0 / 3.0);
    CHECK((m - (a + b + c) / 3.0).norm() <= 1e-12);
  }
}

TEST_CASE("com range over fold limits") {
  const ComRange arm = limb_com_range(kArm, {0.0, kPi});
  CHECK(arm.e_max == Approx(0.11120).epsilon(1e-4));
  CHECK(arm.e_max == Approx(0.5608 * 0.17 * (1.0 + 0.1664)).epsilon(1e-12));
  CHECK(arm.e_min < arm.e_max);

  const ComRange fixed = limb_com_range(kArm, {1.0, 1.0});
  CHECK(fixed.e_min == fixed.e_max);

  // A right angle is the angular midpoint of the fold range.
  const ComRange lower = limb_com_range(kLeg, {0.0, kPi / 2.0});
  const ComRange upper = limb_com_range(kLeg, {kPi / 2.0, kPi});
  CHECK(lower.e_max == upper.e_min);
  const double side_bp = kLeg.p_s * kLeg.a;
  CHECK(upper.e_min == Approx(kLeg.p_l * std::hypot(kLeg.c, side_bp)).epsilon(1e-12));

  CHECK_THROWS_AS(limb_com_range(kArm, {1.0, 0.5}), InvalidParameter);
  CHECK_THROWS_AS(limb_com_range(kArm, {-0.1, 1.0}), InvalidParameter);
}

TEST_CASE("acos clamps rounding noise only") {
  CHECK(checked_acos(1.0 + 1e-12) == 0.0);
  CHECK(checked_acos(-1.0 - 1e-12) == Approx(kPi));
  CHECK_THROWS_AS(checked_acos(1.0 + 1e-6), InvalidParameter);
}
