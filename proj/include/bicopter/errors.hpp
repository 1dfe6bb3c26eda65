// Copyright 2026 The Safe Bicopter Authors
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

#ifndef BICOPTER_ERRORS_HPP_
#define BICOPTER_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bicopter {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument to a pure math helper (e.g. inverting a zero diagonal).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid parameter record (non-positive mass, gains, bounds ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A position or velocity left the closed safe set.
class SafeSetViolation : public Error {
 public:
  using Error::Error;
};

// Commanded position is not strictly inside the position bounds.
class ReferenceInfeasible : public Error {
 public:
  using Error::Error;
};

// Psi could not be inverted even after the net-force projection.
class ControllerSingularity : public Error {
 public:
  using Error::Error;
};

// The integrator produced a non-finite state.
class IntegrationBlowup : public Error {
 public:
  using Error::Error;
};

// Waypoint plan geometry is degenerate or infeasible.
class PlanError : public Error {
 public:
  using Error::Error;
};

// Log file could not be read, written, or has the wrong columns.
class LogFormatError : public Error {
 public:
  using Error::Error;
};

// Scenario configuration failed to parse or validate. The message names the
// offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bicopter

#endif  // BICOPTER_ERRORS_HPP_
