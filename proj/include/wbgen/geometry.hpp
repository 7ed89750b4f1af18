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

namespace wbgen {

/// A limb (or body) triangle ABC with two fixed sides and the ratios that
/// locate its centre of mass.
///
/// A is the origin vertex (hip, shoulder), B the middle joint (knee, elbow)
/// and C the end vertex (ankle, wrist). Side `c` = |AB| is the upper link,
/// side `a` = |BC| the lower link. The line from A meets side BC at P with
/// |BP| = p_s * a, and the centre of mass M sits on AP at |AM| = p_l * |AP|.
struct TriangleSpec {
  double a = 0.0;
  double c = 0.0;
  double p_s = 0.5;
  double p_l = 2.0 / 3.0;

  double p_c() const { return 1.0 - p_s; }

  /// Throws InvalidParameter when a side or ratio is out of its domain.
  void validate() const;
};

/// Solved triangle: side b = |AC| (limb extension), the centroid line
/// l = |AP|, the angles of ABC and of the sub-triangle ABP.
struct TriangleSolution {
  double b = 0.0;
  double l = 0.0;
  double alpha = 0.0;   // at A
  double beta = 0.0;    // at B
  double gamma = 0.0;   // at C
  double alpha1 = 0.0;  // ABP at A
  double beta1 = 0.0;   // ABP at B
  double gamma1 = 0.0;  // ABP at P
};

/// Allowed interior angle range at the middle joint, radians in [0, pi].
struct FoldLimits {
  double min = 0.0;
  double max = 3.14159265358979323846;
};

struct ComRange {
  double e_min = 0.0;
  double e_max = 0.0;
};

/// l = d(A, M) / p_l.
double centroid_line_length(double d_am, double p_l);

/// Solves the triangle whose centre of mass lies at distance `d` from A.
/// Throws OutOfRange carrying the feasible [d_min, d_max] when `d` is not
/// reachable for any fold of the middle joint.
TriangleSolution solve_limb_triangle(const TriangleSpec& spec, double d);

/// Solves the triangle for a known extension b = |AC|.
TriangleSolution solve_from_extension(const TriangleSpec& spec, double b);

/// Coordinate construction of the centre-of-mass distance |AM| for a given
/// extension. Independent of the law-of-cosines route above.
double forward_limb_com(const TriangleSpec& spec, double b);

/// Extension b for an interior angle beta at the middle joint.
double extension_at_fold(const TriangleSpec& spec, double beta);

/// Min and max CoM distance from A over the allowed fold range.
ComRange limb_com_range(const TriangleSpec& spec, FoldLimits fold);

/// Centre-of-mass point of triangle (a, b, c) = (origin, middle, end).
Eigen::Vector3d mass_point(const Eigen::Vector3d& origin,
                           const Eigen::Vector3d& middle,
                           const Eigen::Vector3d& end, double p_s, double p_l);

/// acos with a 1e-9 tolerance: arguments within tolerance of [-1, 1] are
/// clamped, larger violations throw InvalidParameter.
double checked_acos(double x);

}  // namespace wbgen
