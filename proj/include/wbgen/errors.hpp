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

#include <stdexcept>
#include <string>

namespace wbgen {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs or configuration that can never be valid (bad file, bad value).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A file failed to parse.
class ParseError : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

/// A loaded structure violates one of its invariants. `field()` names the
/// offending field.
class InvariantViolation : public InvalidParameter {
 public:
  InvariantViolation(std::string field, const std::string& what)
      : InvalidParameter(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// A requested value lies outside the feasible interval [lo, hi].
class OutOfRange : public Error {
 public:
  OutOfRange(const std::string& what, double lo, double hi)
      : Error(what + " (feasible [" + std::to_string(lo) + ", " +
              std::to_string(hi) + "])"),
        lo_(lo),
        hi_(hi) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// Projected angle inside the prohibition band around +-pi/2.
class Singularity : public Error {
 public:
  using Error::Error;
};

/// Great-circle interpolation between (nearly) antiparallel vectors.
class AmbiguousArc : public Error {
 public:
  using Error::Error;
};

/// Leg yaw reference parallel to the leg axis.
class YawUndefined : public Error {
 public:
  using Error::Error;
};

/// Full-chain CoM cannot be represented by the triangle construction.
class CalibrationInfeasible : public Error {
 public:
  using Error::Error;
};

/// A model joint has no counterpart in the pose (or vice versa).
class JointMismatch : public Error {
 public:
  using Error::Error;
};

/// Pendulum vector of zero length.
class UndefinedPendulum : public Error {
 public:
  using Error::Error;
};

/// Wraps a failure raised while resolving one stage of a pose.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what, bool infeasible)
      : Error(stage + ": " + what),
        stage_(std::move(stage)),
        infeasible_(infeasible) {}
  const std::string& stage() const { return stage_; }
  /// True when the root cause is geometric infeasibility rather than bad input.
  bool infeasible() const { return infeasible_; }

 private:
  std::string stage_;
  bool infeasible_;
};

}  // namespace wbgen
