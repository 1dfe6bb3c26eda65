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

// Backstepping controller in the transformed coordinates.
//
// The error stack is
//
//   e1 = z1 - z_d1
//   e2 = F1 + k1 e1                     F1 = z1'
//   e3 = Q (f2 + g2(z3)) + k2 e2        Q  = D(Ch_zeta2)^2 D_I(Ch_zeta1)^2 D_I(xbar2)^2
//   e4 = e2 - k1 e1 + e3' + k3 e3
//
// with k2 = 1 / k1, and the composite Lyapunov function
//
//   V = |e1|^2 / 2 + sum_i log cosh(zeta2_i) + |e3|^2 / 2 + |e4|^2 / 2.
//
// Along the plant flow e4' = Phi - e3 + Psi u, so the static feedback
//
//   u = -Psi^-1 (Phi + k4 e4)
//
// gives V' = -|sqrt(k1) e1 - sqrt(k2) e2|^2 - k3 |e3|^2 - k4 |e4|^2 <= 0.
// Every derivative in Phi is a closed-form function of the measured state;
// the reference is a constant setpoint, so its derivatives are zero.

#ifndef BICOPTER_CTRL_HPP_
#define BICOPTER_CTRL_HPP_

#include <utility>

#include "bicopter/model.hpp"
#include "bicopter/types.hpp"
#include "bicopter/xform.hpp"

namespace bicopter {

// Backstepping gains. k2 is always 1 / k1; there is no way to set it
// independently.
class ControlGains {
 public:
  // Throws ParameterError unless k1, k3, k4 are finite and > 0.
  ControlGains(double k1, double k3, double k4);
  ControlGains() : ControlGains(1.0, 1.0, 1.0) {}

  double k1() const { return k1_; }
  double k2() const { return k2_; }
  double k3() const { return k3_; }
  double k4() const { return k4_; }

  bool operator==(const ControlGains&) const = default;

 private:
  double k1_;
  double k2_;
  double k3_;
  double k4_;
};

struct ControllerConfig {
  ControlGains gains;
  SafeSet safe;
  // Net force is pushed out of (-f_epsilon, f_epsilon) before it enters the
  // controller, keeping Psi invertible.
  double f_epsilon = 0.1;

  void validate() const;
};

struct ErrorStack {
  Vec2 e1 = Vec2::Zero();
  Vec2 e2 = Vec2::Zero();
  Vec2 e3 = Vec2::Zero();
  Vec2 e4 = Vec2::Zero();
  Vec2 e2_dot = Vec2::Zero();
  Vec2 e2_ddot = Vec2::Zero();
  Vec2 e3_dot = Vec2::Zero();
  // Q and its derivatives are diagonal; stored as full matrices.
  Mat2 Q = Mat2::Zero();
  Mat2 Q_dot = Mat2::Zero();
  Mat2 Q_ddot = Mat2::Zero();
  Mat2 N = Mat2::Zero();
  Mat2 N_dot = Mat2::Zero();
  Vec2 Phi = Vec2::Zero();
  Mat2 Psi = Mat2::Zero();
  double V = 0.0;
  double V_dot = 0.0;

  // Intermediate quantities exposed for verification and logging.
  Vec2 z1_dot = Vec2::Zero();     // F1
  Vec2 F1_dot = Vec2::Zero();
  Vec2 zeta2 = Vec2::Zero();
  Vec2 z3 = Vec2::Zero();         // [theta, projected F]
};

struct ControllerOutput {
  ControlInput u;
  ErrorStack stack;
};

// Returns F if |F| >= epsilon, otherwise epsilon with the sign of F
// (+epsilon when F == 0).
double project_force(double F, double epsilon);

// Setpoint in transformed coordinates. Throws ReferenceInfeasible unless
// |x_d1_i| < xbar1_i.
Vec2 desired_z1(const Vec2& x_d1, const SafeSet& safe);

// Populates every field, Phi and Psi included. The net force is projected
// before any controller term is formed. Throws SafeSetViolation if the state
// is outside the safe set and ControllerSingularity if Psi is degenerate.
ErrorStack error_stack(const PlantState& state, const Vec2& z_d1,
                       const ControllerConfig& cfg, const PlantParams& params);

// Same, starting from transformed coordinates (zeta1, zeta2, z3, z4 are
// read; z1 and z2 must equal D(xbar) zeta).
ErrorStack error_stack(const TransformedState& ts, const Vec2& z_d1,
                       const ControllerConfig& cfg, const PlantParams& params);

double lyapunov_V(const Vec2& e1, const Vec2& e3, const Vec2& e4, const Vec2& zeta2);

double lyapunov_Vdot_closed(const Vec2& e1, const Vec2& e2, const Vec2& e3,
                            const Vec2& e4, const ControlGains& gains);

// Phi and Psi = Q N g4 for a populated stack. Throws ControllerSingularity if
// |det Psi| falls below the inversion floor.
std::pair<Vec2, Mat2> compute_Phi_Psi(const ErrorStack& stack, const Vec2& z4,
                                      const ControllerConfig& cfg,
                                      const PlantParams& params);

// Determinant magnitude below which Psi is treated as singular.
inline constexpr double kPsiDeterminantFloor = 1e-12;

// Inverse by adjugate. Throws ControllerSingularity below the floor.
Mat2 invert_2x2(const Mat2& a, double det_floor = kPsiDeterminantFloor);

// Lower bound on |det Psi| over all states the controller can see, given the
// force projection and the zeta guard.
double psi_det_lower_bound(const ControllerConfig& cfg, const PlantParams& params);

ControllerOutput evaluate_controller(const PlantState& state, const Vec2& x_d1,
                                     const ControllerConfig& cfg,
                                     const PlantParams& params);

ControllerOutput evaluate_controller(const TransformedState& ts, const Vec2& x_d1,
                                     const ControllerConfig& cfg,
                                     const PlantParams& params);

ControlInput control_law(const PlantState& state, const Vec2& x_d1,
                         const ControllerConfig& cfg, const PlantParams& params);

}  // namespace bicopter

#endif  // BICOPTER_CTRL_HPP_
