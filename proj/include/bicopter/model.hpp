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

// Planar bicopter with the thrust channel dynamically extended by two
// integrators, so that the input map becomes square and constant.
//
//   x1' = x2
//   x2' = f2 + g2(x3)          f2 = [0, -g]
//   x3' = x4
//   x4' = g4 u                 u  = [F'', M]
//
// with x1 = [r1, r2], x2 = [r1', r2'], x3 = [theta, F], x4 = [theta', F'].

#ifndef BICOPTER_MODEL_HPP_
#define BICOPTER_MODEL_HPP_

#include <array>

#include "bicopter/types.hpp"

namespace bicopter {

struct PlantParams {
  double m = 1.0;   // kg
  double J = 0.2;   // kg m^2
  double l = 0.2;   // m, arm length
  double g = 9.81;  // m/s^2

  // Throws ParameterError unless every field is finite and strictly positive.
  void validate() const;

  double hover_thrust() const { return m * g; }
};

struct PlantState {
  Vec2 x1 = Vec2::Zero();  // position [m]
  Vec2 x2 = Vec2::Zero();  // velocity [m/s]
  Vec2 x3 = Vec2::Zero();  // [theta rad, F N]
  Vec2 x4 = Vec2::Zero();  // [theta' rad/s, F' N/s]

  Vec8 flat() const;
  static PlantState from_flat(const Vec8& v);

  bool all_finite() const;

  // Rest at the origin with hover thrust.
  static PlantState hover(const PlantParams& params);
};

struct ControlInput {
  Vec2 u = Vec2::Zero();  // [F'' N/s^2, M N m]

  double force_accel() const { return u[0]; }
  double moment() const { return u[1]; }
};

// Gravity drift of the velocity channel.
Vec2 eval_f2(const PlantParams& params);

// m^-1 [-sin(theta), cos(theta)] F
Vec2 eval_g2(const Vec2& x3, const PlantParams& params);

// [[0, 1/J], [1, 0]]
Mat2 eval_g4(const PlantParams& params);

// Jacobian of g2 with respect to x3. det N = -F / m^2.
Mat2 eval_N(const Vec2& x3, const PlantParams& params);

// Time derivative of N along x3' = x4.
Mat2 eval_Ndot(const Vec2& x3, const Vec2& x4, const PlantParams& params);

// Splits net force and moment into the two rotor forces [f1, f2].
std::array<double, 2> rotor_forces(double F, double M, const PlantParams& params);

// Net force and moment [F, M] from rotor forces; inverse of rotor_forces.
std::array<double, 2> combine_rotor_forces(double f1, double f2,
                                           const PlantParams& params);

// Extended-state vector field. Linear in u for a fixed state.
PlantState plant_derivative(const PlantState& state, const ControlInput& u,
                            const PlantParams& params);

}  // namespace bicopter

#endif  // BICOPTER_MODEL_HPP_
