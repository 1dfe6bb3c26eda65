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

// Constraint-removing change of coordinates for the position and velocity
// channels. Inside the open box |x1_i| < xbar1_i, |x2_i| < xbar2_i
//
//   z1 = D(xbar1) atanh(x1 / xbar1),   z2 = D(xbar2) atanh(x2 / xbar2)
//
// maps the box onto all of R^2 x R^2, and zeta = z / xbar are the
// dimensionless coordinates in which the controller is written. Any finite z
// maps back strictly inside the box.

#ifndef BICOPTER_XFORM_HPP_
#define BICOPTER_XFORM_HPP_

#include <Eigen/Core>

#include "bicopter/model.hpp"
#include "bicopter/types.hpp"

namespace bicopter {

struct SafeSet {
  Vec2 xbar1 = Vec2(7.0, 5.0);  // position bounds [m]
  Vec2 xbar2 = Vec2(0.5, 0.5);  // velocity bounds [m/s]
  // Normalized coordinates are clamped to [-1 + chi_clamp, 1 - chi_clamp]
  // before atanh.
  double chi_clamp = 1e-9;
  // |zeta_i| is clamped to zeta_clamp so cosh^2 stays finite.
  double zeta_clamp = 30.0;

  void validate() const;

  // Strict membership of (x1, x2) in the open safe box.
  bool contains(const Vec2& x1, const Vec2& x2) const;
  bool contains_position(const Vec2& x1) const;
};

// Plant state expressed in the transformed coordinates.
struct TransformedState {
  Vec2 z1 = Vec2::Zero();
  Vec2 z2 = Vec2::Zero();
  Vec2 z3 = Vec2::Zero();
  Vec2 z4 = Vec2::Zero();
  Vec2 zeta1 = Vec2::Zero();
  Vec2 zeta2 = Vec2::Zero();
};

struct TransformedPair {
  Vec2 z1;
  Vec2 z2;
};

struct PhysicalPair {
  Vec2 x1;
  Vec2 x2;
};

Eigen::MatrixXd diag_of(const Eigen::VectorXd& q);
// Throws DomainError if any q_i == 0.
Eigen::MatrixXd diag_inv_of(const Eigen::VectorXd& q);
Eigen::VectorXd ch_of(const Eigen::VectorXd& q);
Eigen::VectorXd sh_of(const Eigen::VectorXd& q);

// atanh of a normalized coordinate, clamped to 1 - chi_clamp. Throws
// SafeSetViolation when |chi| >= 1 before clamping.
Vec2 clamped_atanh(const Vec2& chi, double chi_clamp, const char* what);

TransformedPair forward_map(const Vec2& x1, const Vec2& x2, const SafeSet& safe);
PhysicalPair inverse_map(const Vec2& z1, const Vec2& z2, const SafeSet& safe);

// Full plant state -> transformed coordinates, with zeta guarded to
// |zeta_i| <= zeta_clamp. z1/z2 are kept consistent with the guarded zeta.
TransformedState transform_state(const PlantState& state, const SafeSet& safe);

// z1' = D(Ch_zeta1)^2 D(xbar2) tanh(zeta2).
Vec2 transformed_drift_F1(const Vec2& zeta1, const Vec2& zeta2, const SafeSet& safe);

// z2' = D(Ch_zeta2)^2 (f2 + g2(z3)).
Vec2 transformed_drift_z2(const Vec2& zeta2, const Vec2& z3, const PlantParams& params);

struct ZetaRates {
  Vec2 zeta1_dot;
  Vec2 zeta2_dot;
  Vec2 zeta1_ddot;
  Vec2 zeta2_ddot;
};

// First and second time derivatives of zeta along the plant flow. The second
// derivatives do not depend on the input u.
ZetaRates zeta_rates(const Vec2& zeta1, const Vec2& zeta2, const Vec2& z3,
                     const Vec2& z4, const SafeSet& safe, const PlantParams& params);

}  // namespace bicopter

#endif  // BICOPTER_XFORM_HPP_
