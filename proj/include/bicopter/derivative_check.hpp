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

// Finite-difference oracles for the closed-form controller derivatives.
//
// Each analytic derivative is compared with a five-point central difference of
// its base quantity along the closed-loop flow, x(t +/- h) ~ x +/- h f(x, u(x)). Only
// base quantities (e1..e4, Q, N, zeta, ...) are evaluated on the displaced
// states, so the oracle shares no derivative code with the controller.

#ifndef BICOPTER_DERIVATIVE_CHECK_HPP_
#define BICOPTER_DERIVATIVE_CHECK_HPP_

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bicopter/ctrl.hpp"
#include "bicopter/model.hpp"

namespace bicopter {

struct OracleResult {
  std::string quantity;
  double worst_rel_error = 0.0;
};

struct DerivativeReport {
  std::vector<OracleResult> results;
  double threshold = 1e-5;

  bool passed() const;
  // Names of quantities at or above the threshold.
  std::vector<std::string> failing() const;
};

struct DerivativeCheckOptions {
  std::uint64_t seed = 42;
  int count = 100;
  double step = 1e-5;
  double threshold = 1e-5;
  PlantParams params;
  ControllerConfig cfg;
  // Applied to the analytic stack before comparison; used to inject faults.
  std::function<void(ErrorStack&)> tamper;
};

// Relative error max|a - b| / max(|a|, |b|, 1), entrywise maxima.
double relative_error(const Eigen::Ref<const Eigen::MatrixXd>& analytic,
                      const Eigen::Ref<const Eigen::MatrixXd>& numeric);

// Random state strictly inside the safe set with |F| well above f_epsilon.
PlantState random_interior_state(std::mt19937_64& rng, const ControllerConfig& cfg,
                                 const PlantParams& params);

// Throws ParameterError if count < 1.
DerivativeReport verify_derivatives(const DerivativeCheckOptions& opts);

}  // namespace bicopter

#endif  // BICOPTER_DERIVATIVE_CHECK_HPP_
