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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wbgen/errors.hpp"

namespace wbgen {

namespace {

constexpr double kAcosTolerance = 1e-9;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

void TriangleSpec::validate() const {
  if (!(a > 0.0)) throw InvalidParameter("triangle side a must be positive");
  if (!(c > 0.0)) throw InvalidParameter("triangle side c must be positive");
  if (!(p_s > 0.0 && p_s < 1.0)) throw InvalidParameter("p_s must lie in (0, 1)");
  if (!(p_l > 0.0 && p_l <= 1.0)) throw InvalidParameter("p_l must lie in (0, 1]");
}

double checked_acos(double x) {
  if (!(std::abs(x) <= 1.0 + kAcosTolerance)) {
    throw InvalidParameter("acos argument " + std::to_string(x) + " outside [-1, 1]");
  }
  return std::acos(clamp_unit(x));
}

double centroid_line_length(double d_am, double p_l) {
  if (!(p_l > 0.0)) throw InvalidParameter("p_l must be positive");
  if (!(d_am >= 0.0)) throw InvalidParameter("distance must be non-negative");
  return d_am / p_l;
}

TriangleSolution solve_limb_triangle(const TriangleSpec& spec, double d) {
  spec.validate();
  const double a = spec.a;
  const double c = spec.c;
  const double ps = spec.p_s;
  const double pc = spec.p_c();
  const double side_bp = ps * a;
  const double d_min = spec.p_l * std::abs(c - side_bp);
  const double d_max = spec.p_l * (c + side_bp);
  if (!(d >= 0.0)) throw OutOfRange("negative CoM distance", d_min, d_max);

  TriangleSolution s;
  s.l = centroid_line_length(d, spec.p_l);
  const double l = s.l;

  if (l == 0.0) {
    // Only possible when c == p_s * a and the limb is fully folded.
    if (std::abs(c - side_bp) > kAcosTolerance * c) {
      throw OutOfRange("CoM distance not reachable", d_min, d_max);
    }
    s.beta1 = 0.0;
    s.alpha1 = std::numbers::pi / 2.0;
    s.gamma1 = std::numbers::pi / 2.0;
  } else {
    const double cos_alpha1 = (-side_bp * side_bp + l * l + c * c) / (2.0 * l * c);
    const double cos_beta1 = (side_bp * side_bp - l * l + c * c) / (2.0 * side_bp * c);
    if (std::abs(cos_alpha1) > 1.0 + kAcosTolerance ||
        std::abs(cos_beta1) > 1.0 + kAcosTolerance) {
      throw OutOfRange("CoM distance not reachable", d_min, d_max);
    }
    s.alpha1 = checked_acos(cos_alpha1);
    s.beta1 = checked_acos(cos_beta1);
    s.gamma1 = std::numbers::pi - s.alpha1 - s.beta1;
  }

  const double b_sq = 2.0 * l * l + pc * pc * a * a + ps * ps * a * a +
                      2.0 * (pc - ps) * l * a * std::cos(s.gamma1) - c * c;
  s.b = std::sqrt(std::max(0.0, b_sq));

  const TriangleSolution full = solve_from_extension(spec, s.b);
  s.alpha = full.alpha;
  s.beta = full.beta;
  s.gamma = full.gamma;
  return s;
}

TriangleSolution solve_from_extension(const TriangleSpec& spec, double b) {
  spec.validate();
  const double a = spec.a;
  const double c = spec.c;
  const double lo = std::abs(a - c);
  const double hi = a + c;
  if (!(b >= lo - kAcosTolerance * hi && b <= hi + kAcosTolerance * hi)) {
    throw OutOfRange("limb extension not reachable", lo, hi);
  }
  TriangleSolution s;
  s.b = b;
  s.beta = checked_acos((a * a - b * b + c * c) / (2.0 * a * c));
  if (b == 0.0) {
    s.alpha = std::numbers::pi / 2.0;
  } else {
    s.alpha = checked_acos((-a * a + b * b + c * c) / (2.0 * b * c));
  }
  s.gamma = std::numbers::pi - s.alpha - s.beta;

  const double side_bp = spec.p_s * a;
  s.beta1 = s.beta;
  s.l = std::sqrt(std::max(0.0, c * c + side_bp * side_bp -
                                    2.0 * c * side_bp * std::cos(s.beta)));
  if (s.l == 0.0) {
    s.alpha1 = std::numbers::pi / 2.0;
  } else {
    s.alpha1 = checked_acos((-side_bp * side_bp + s.l * s.l + c * c) / (2.0 * s.l * c));
  }
  s.gamma1 = std::numbers::pi - s.alpha1 - s.beta1;
  return s;
}

double forward_limb_com(const TriangleSpec& spec, double b) {
  spec.validate();
  const double a = spec.a;
  const double c = spec.c;
  const double lo = std::abs(a - c);
  const double hi = a + c;
  if (!(b >= lo - kAcosTolerance * hi && b <= hi + kAcosTolerance * hi)) {
    throw InvalidParameter("extension outside [|a - c|, a + c]");
  }
  const double cos_beta = clamp_unit((a * a + c * c - b * b) / (2.0 * a * c));
  const double sin_beta = std::sqrt(std::max(0.0, 1.0 - cos_beta * cos_beta));
  // B at the origin, A on the x-axis, C rotated by beta from BA.
  const Eigen::Vector2d vertex_a(c, 0.0);
  const Eigen::Vector2d vertex_c(a * cos_beta, a * sin_beta);
  const Eigen::Vector2d p = spec.p_s * vertex_c;
  const Eigen::Vector2d m = vertex_a + spec.p_l * (p - vertex_a);
  return (m - vertex_a).norm();
}

double extension_at_fold(const TriangleSpec& spec, double beta) {
  spec.validate();
  const double a = spec.a;
  const double c = spec.c;
  return std::sqrt(std::max(0.0, a * a + c * c - 2.0 * a * c * std::cos(beta)));
}

ComRange limb_com_range(const TriangleSpec& spec, FoldLimits fold) {
  spec.validate();
  if (!(fold.min <= fold.max)) throw InvalidParameter("empty fold range");
  if (fold.min < 0.0 || fold.max > std::numbers::pi + 1e-12) {
    throw InvalidParameter("fold limits must lie in [0, pi]");
  }
  const double hi = spec.a + spec.c;
  const auto at = [&](double beta) {
    return forward_limb_com(spec, std::min(extension_at_fold(spec, beta), hi));
  };
  return {at(fold.min), at(fold.max)};
}

Eigen::Vector3d mass_point(const Eigen::Vector3d& origin,
                           const Eigen::Vector3d& middle,
                           const Eigen::Vector3d& end, double p_s, double p_l) {
  const Eigen::Vector3d p = middle + p_s * (end - middle);
  return origin + p_l * (p - origin);
}

}  // namespace wbgen
