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

#include "bicopter/xform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bicopter/errors.hpp"

namespace bicopter {

void SafeSet::validate() const {
  if (!xbar1.allFinite() || (xbar1.array() <= 0.0).any()) {
    throw ParameterError("safe set: position bounds xbar1 must be finite and > 0");
  }
  if (!xbar2.allFinite() || (xbar2.array() <= 0.0).any()) {
    throw ParameterError("safe set: velocity bounds xbar2 must be finite and > 0");
  }
  if (!(chi_clamp > 0.0 && chi_clamp < 1.0)) {
    throw ParameterError("safe set: chi_clamp must lie in (0, 1)");
  }
  if (!(zeta_clamp > 0.0) || !std::isfinite(zeta_clamp)) {
    throw ParameterError("safe set: zeta_clamp must be finite and > 0");
  }
}

bool SafeSet::contains_position(const Vec2& x1) const {
  return (x1.array().abs() < xbar1.array()).all();
}

bool SafeSet::contains(const Vec2& x1, const Vec2& x2) const {
  return contains_position(x1) && (x2.array().abs() < xbar2.array()).all();
}

Eigen::MatrixXd diag_of(const Eigen::VectorXd& q) { return q.asDiagonal(); }

Eigen::MatrixXd diag_inv_of(const Eigen::VectorXd& q) {
  if ((q.array() == 0.0).any()) {
    throw DomainError("diag_inv_of: zero diagonal entry");
  }
  return q.cwiseInverse().asDiagonal();
}

Eigen::VectorXd ch_of(const Eigen::VectorXd& q) { return q.array().cosh().matrix(); }

Eigen::VectorXd sh_of(const Eigen::VectorXd& q) { return q.array().sinh().matrix(); }

Vec2 clamped_atanh(const Vec2& chi, double chi_clamp, const char* what) {
  Vec2 out;
  const double limit = 1.0 - chi_clamp;
  for (int i = 0; i < 2; ++i) {
    // Negated comparison also rejects NaN.
    if (!(std::abs(chi[i]) < 1.0)) {
      throw SafeSetViolation(std::string(what) + " component " + std::to_string(i + 1) +
                             " outside the safe set (normalized value " +
                             std::to_string(chi[i]) + ")");
    }
    out[i] = std::atanh(std::clamp(chi[i], -limit, limit));
  }
  return out;
}

TransformedPair forward_map(const Vec2& x1, const Vec2& x2, const SafeSet& safe) {
  const Vec2 a1 = clamped_atanh(x1.cwiseQuotient(safe.xbar1), safe.chi_clamp, "position");
  const Vec2 a2 = clamped_atanh(x2.cwiseQuotient(safe.xbar2), safe.chi_clamp, "velocity");
  return {safe.xbar1.cwiseProduct(a1), safe.xbar2.cwiseProduct(a2)};
}

PhysicalPair inverse_map(const Vec2& z1, const Vec2& z2, const SafeSet& safe) {
  const Vec2 zeta1 = z1.cwiseQuotient(safe.xbar1);
  const Vec2 zeta2 = z2.cwiseQuotient(safe.xbar2);
  return {safe.xbar1.cwiseProduct(zeta1.array().tanh().matrix()),
          safe.xbar2.cwiseProduct(zeta2.array().tanh().matrix())};
}

TransformedState transform_state(const PlantState& state, const SafeSet& safe) {
  TransformedState ts;
  const double zc = safe.zeta_clamp;
  ts.zeta1 = clamped_atanh(state.x1.cwiseQuotient(safe.xbar1), safe.chi_clamp, "position")
                 .cwiseMax(-zc)
                 .cwiseMin(zc);
  ts.zeta2 = clamped_atanh(state.x2.cwiseQuotient(safe.xbar2), safe.chi_clamp, "velocity")
                 .cwiseMax(-zc)
                 .cwiseMin(zc);
  ts.z1 = safe.xbar1.cwiseProduct(ts.zeta1);
  ts.z2 = safe.xbar2.cwiseProduct(ts.zeta2);
  ts.z3 = state.x3;
  ts.z4 = state.x4;
  return ts;
}

Vec2 transformed_drift_F1(const Vec2& zeta1, const Vec2& zeta2, const SafeSet& safe) {
  const Eigen::Array2d ch1 = zeta1.array().cosh();
  return (ch1 * ch1 * safe.xbar2.array() * zeta2.array().tanh()).matrix();
}

Vec2 transformed_drift_z2(const Vec2& zeta2, const Vec2& z3, const PlantParams& params) {
  const Eigen::Array2d ch2 = zeta2.array().cosh();
  return (ch2 * ch2 * (eval_f2(params) + eval_g2(z3, params)).array()).matrix();
}

ZetaRates zeta_rates(const Vec2& zeta1, const Vec2& zeta2, const Vec2& z3,
                     const Vec2& z4, const SafeSet& safe, const PlantParams& params) {
  const Eigen::Array2d p = safe.xbar1.array();
  const Eigen::Array2d w = safe.xbar2.array();
  const Eigen::Array2d ch1 = zeta1.array().cosh();
  const Eigen::Array2d ch2 = zeta2.array().cosh();
  const Eigen::Array2d th2 = zeta2.array().tanh();
  const Eigen::Array2d sh2a = (2.0 * zeta1.array()).sinh();
  const Eigen::Array2d sh2b = (2.0 * zeta2.array()).sinh();
  // Velocity-channel acceleration and its rate.
  const Eigen::Array2d accel = (eval_f2(params) + eval_g2(z3, params)).array();
  const Eigen::Array2d accel_rate = (eval_N(z3, params) * z4).array();

  ZetaRates r;
  const Eigen::Array2d d1 = ch1 * ch1 * w * th2 / p;
  const Eigen::Array2d d2 = ch2 * ch2 * accel / w;
  r.zeta1_dot = d1.matrix();
  r.zeta2_dot = d2.matrix();
  r.zeta1_ddot = (w / p * (sh2a * d1 * th2 + ch1 * ch1 * d2 / (ch2 * ch2))).matrix();
  r.zeta2_ddot = ((sh2b * d2 * accel + ch2 * ch2 * accel_rate) / w).matrix();
  return r;
}

}  // namespace bicopter
