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

#include "bicopter/ctrl.hpp"

#include <cmath>
#include <string>

#include "bicopter/errors.hpp"

namespace bicopter {

namespace {

using Arr = Eigen::Array2d;

Mat2 diag2(const Arr& d) { return d.matrix().asDiagonal(); }

}  // namespace

ControlGains::ControlGains(double k1, double k3, double k4)
    : k1_(k1), k2_(1.0 / k1), k3_(k3), k4_(k4) {
  auto check = [](double k, const char* name) {
    if (!std::isfinite(k) || k <= 0.0) {
      throw ParameterError(std::string("gain ") + name + " must be finite and > 0");
    }
  };
  check(k1, "k1");
  check(k3, "k3");
  check(k4, "k4");
}

void ControllerConfig::validate() const {
  safe.validate();
  if (!std::isfinite(f_epsilon) || f_epsilon <= 0.0) {
    throw ParameterError("f_epsilon must be finite and > 0");
  }
}

double project_force(double F, double epsilon) {
  if (std::abs(F) >= epsilon) return F;
  return F < 0.0 ? -epsilon : epsilon;
}

Vec2 desired_z1(const Vec2& x_d1, const SafeSet& safe) {
  if (!safe.contains_position(x_d1)) {
    throw ReferenceInfeasible("reference position (" + std::to_string(x_d1[0]) + ", " +
                              std::to_string(x_d1[1]) +
                              ") is not strictly inside the position bounds");
  }
  const Vec2 chi = x_d1.cwiseQuotient(safe.xbar1);
  return safe.xbar1.cwiseProduct(clamped_atanh(chi, safe.chi_clamp, "reference"));
}

double lyapunov_V(const Vec2& e1, const Vec2& e3, const Vec2& e4, const Vec2& zeta2) {
  double log_cosh = 0.0;
  for (int i = 0; i < 2; ++i) {
    // log cosh(x) = |x| + log1p(exp(-2|x|)) - log 2, stable for large |x|.
    const double a = std::abs(zeta2[i]);
    log_cosh += a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
  }
  return 0.5 * e1.squaredNorm() + log_cosh + 0.5 * e3.squaredNorm() +
         0.5 * e4.squaredNorm();
}

double lyapunov_Vdot_closed(const Vec2& e1, const Vec2& e2, const Vec2& e3,
                            const Vec2& e4, const ControlGains& gains) {
  const Vec2 mixed = std::sqrt(gains.k1()) * e1 - std::sqrt(gains.k2()) * e2;
  return -mixed.squaredNorm() - gains.k3() * e3.squaredNorm() -
         gains.k4() * e4.squaredNorm();
}

Mat2 invert_2x2(const Mat2& a, double det_floor) {
  const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (!(std::abs(det) >= det_floor)) {
    throw ControllerSingularity("Psi is singular (det = " + std::to_string(det) + ")");
  }
  Mat2 adj;
  adj << a(1, 1), -a(0, 1),
        -a(1, 0), a(0, 0);
  return adj / det;
}

double psi_det_lower_bound(const ControllerConfig& cfg, const PlantParams& params) {
  // Q_i = cosh^2(zeta2_i) / (cosh^2(zeta1_i) xbar2_i^2) >= 1 / (cosh^2(Z) xbar2_i^2).
  const double ch = std::cosh(cfg.safe.zeta_clamp);
  double det_q = 1.0;
  for (int i = 0; i < 2; ++i) {
    const double w = cfg.safe.xbar2[i];
    det_q *= 1.0 / (ch * ch * w * w);
  }
  return det_q * cfg.f_epsilon / (params.m * params.m * params.J);
}

std::pair<Vec2, Mat2> compute_Phi_Psi(const ErrorStack& stack, const Vec2& z4,
                                      const ControllerConfig& cfg,
                                      const PlantParams& params) {
  const Vec2 accel = eval_f2(params) + eval_g2(stack.z3, params);
  const Vec2 accel_rate = stack.N * z4;
  const auto& k = cfg.gains;
  // e2' - k1 z1' is the derivative of F1 alone.
  const Vec2 phi = stack.e3 + stack.F1_dot + stack.Q_ddot * accel +
                   2.0 * stack.Q_dot * accel_rate + stack.Q * stack.N_dot * z4 +
                   k.k2() * stack.e2_ddot + k.k3() * stack.e3_dot;
  const Mat2 psi = stack.Q * stack.N * eval_g4(params);
  return {phi, psi};
}

ErrorStack error_stack(const PlantState& state, const Vec2& z_d1,
                       const ControllerConfig& cfg, const PlantParams& params) {
  return error_stack(transform_state(state, cfg.safe), z_d1, cfg, params);
}

ErrorStack error_stack(const TransformedState& ts_in, const Vec2& z_d1,
                       const ControllerConfig& cfg, const PlantParams& params) {
  const auto& k = cfg.gains;
  TransformedState ts = ts_in;
  ts.z3[1] = project_force(ts.z3[1], cfg.f_epsilon);
  const ZetaRates rates = zeta_rates(ts.zeta1, ts.zeta2, ts.z3, ts.z4, cfg.safe, params);

  const Arr w = cfg.safe.xbar2.array();
  const Arr a = ts.zeta1.array();
  const Arr b = ts.zeta2.array();
  const Arr a_d = rates.zeta1_dot.array();
  const Arr b_d = rates.zeta2_dot.array();
  const Arr a_dd = rates.zeta1_ddot.array();
  const Arr b_dd = rates.zeta2_ddot.array();

  const Arr ch_a = a.cosh();
  const Arr ch_b = b.cosh();
  const Arr th_a = a.tanh();
  const Arr th_b = b.tanh();
  const Arr sh_2a = (2.0 * a).sinh();
  const Arr ch_2a = (2.0 * a).cosh();
  const Arr sh_2b = (2.0 * b).sinh();
  const Arr ch_2b = (2.0 * b).cosh();
  const Arr ch_a2 = ch_a * ch_a;
  const Arr ch_b2 = ch_b * ch_b;

  ErrorStack s;
  s.zeta2 = ts.zeta2;
  s.z3 = ts.z3;

  // F1 = w cosh^2(a) tanh(b) and its first two time derivatives.
  const Arr f1 = w * ch_a2 * th_b;
  const Arr f1_d = w * (sh_2a * a_d * th_b + ch_a2 * b_d / ch_b2);
  const Arr f1_dd = w * (2.0 * ch_2a * a_d * a_d * th_b + sh_2a * a_dd * th_b +
                         2.0 * sh_2a * a_d * b_d / ch_b2 -
                         2.0 * ch_a2 * th_b * b_d * b_d / ch_b2 + ch_a2 * b_dd / ch_b2);

  s.z1_dot = f1.matrix();
  s.F1_dot = f1_d.matrix();
  s.e1 = ts.z1 - z_d1;
  s.e2 = s.z1_dot + k.k1() * s.e1;
  s.e2_dot = (f1_d + k.k1() * f1).matrix();
  s.e2_ddot = (f1_dd + k.k1() * f1_d).matrix();

  // Q = A B / w^2 with A = cosh^2(b), B = cosh^-2(a).
  const Arr qa = ch_b2;
  const Arr qa_d = sh_2b * b_d;
  const Arr qa_dd = 2.0 * ch_2b * b_d * b_d + sh_2b * b_dd;
  const Arr qb = 1.0 / ch_a2;
  const Arr qb_d = -2.0 * th_a * a_d * qb;
  const Arr qb_dd =
      -2.0 * qb * (a_d * a_d / ch_a2 + th_a * a_dd - 2.0 * th_a * th_a * a_d * a_d);
  const Arr w2 = w * w;
  s.Q = diag2(qa * qb / w2);
  s.Q_dot = diag2((qa_d * qb + qa * qb_d) / w2);
  s.Q_ddot = diag2((qa_dd * qb + 2.0 * qa_d * qb_d + qa * qb_dd) / w2);

  s.N = eval_N(ts.z3, params);
  s.N_dot = eval_Ndot(ts.z3, ts.z4, params);

  const Vec2 accel = eval_f2(params) + eval_g2(ts.z3, params);
  const Vec2 accel_rate = s.N * ts.z4;
  s.e3 = s.Q * accel + k.k2() * s.e2;
  s.e3_dot = s.Q_dot * accel + s.Q * accel_rate + k.k2() * s.e2_dot;
  s.e4 = s.z1_dot + s.e3_dot + k.k3() * s.e3;

  auto [phi, psi] = compute_Phi_Psi(s, ts.z4, cfg, params);
  s.Phi = phi;
  s.Psi = psi;

  s.V = lyapunov_V(s.e1, s.e3, s.e4, s.zeta2);
  s.V_dot = lyapunov_Vdot_closed(s.e1, s.e2, s.e3, s.e4, k);
  return s;
}

ControllerOutput evaluate_controller(const PlantState& state, const Vec2& x_d1,
                                     const ControllerConfig& cfg,
                                     const PlantParams& params) {
  return evaluate_controller(transform_state(state, cfg.safe), x_d1, cfg, params);
}

ControllerOutput evaluate_controller(const TransformedState& ts, const Vec2& x_d1,
                                     const ControllerConfig& cfg,
                                     const PlantParams& params) {
  ControllerOutput out;
  out.stack = error_stack(ts, desired_z1(x_d1, cfg.safe), cfg, params);
  const Mat2 psi_inv = invert_2x2(out.stack.Psi);
  out.u.u = -psi_inv * (out.stack.Phi + cfg.gains.k4() * out.stack.e4);
  return out;
}

ControlInput control_law(const PlantState& state, const Vec2& x_d1,
                         const ControllerConfig& cfg, const PlantParams& params) {
  return evaluate_controller(state, x_d1, cfg, params).u;
}

}  // namespace bicopter
