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

#include "bicopter/model.hpp"

#include <cmath>
#include <string>

#include "bicopter/errors.hpp"

namespace bicopter {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ParameterError(std::string("plant parameter '") + name +
                         "' must be finite and > 0, got " + std::to_string(value));
  }
}

}  // namespace

void PlantParams::validate() const {
  require_positive(m, "m");
  require_positive(J, "J");
  require_positive(l, "l");
  require_positive(g, "g");
}

Vec8 PlantState::flat() const {
  Vec8 v;
  v << x1, x2, x3, x4;
  return v;
}

PlantState PlantState::from_flat(const Vec8& v) {
  PlantState s;
  s.x1 = v.segment<2>(0);
  s.x2 = v.segment<2>(2);
  s.x3 = v.segment<2>(4);
  s.x4 = v.segment<2>(6);
  return s;
}

bool PlantState::all_finite() const { return flat().allFinite(); }

PlantState PlantState::hover(const PlantParams& params) {
  PlantState s;
  s.x3 = Vec2(0.0, params.hover_thrust());
  return s;
}

Vec2 eval_f2(const PlantParams& params) { return Vec2(0.0, -params.g); }

Vec2 eval_g2(const Vec2& x3, const PlantParams& params) {
  const double theta = x3[0];
  const double force = x3[1];
  return Vec2(-std::sin(theta), std::cos(theta)) * (force / params.m);
}

Mat2 eval_g4(const PlantParams& params) {
  Mat2 g4;
  g4 << 0.0, 1.0 / params.J,
        1.0, 0.0;
  return g4;
}

Mat2 eval_N(const Vec2& x3, const PlantParams& params) {
  const double s = std::sin(x3[0]);
  const double c = std::cos(x3[0]);
  const double force = x3[1];
  Mat2 n;
  n << -c * force, -s,
       -s * force,  c;
  return n / params.m;
}

Mat2 eval_Ndot(const Vec2& x3, const Vec2& x4, const PlantParams& params) {
  const double s = std::sin(x3[0]);
  const double c = std::cos(x3[0]);
  const double force = x3[1];
  const double theta_rate = x4[0];
  const double force_rate = x4[1];
  Mat2 nd;
  nd << s * theta_rate * force - c * force_rate, -c * theta_rate,
        -c * theta_rate * force - s * force_rate, -s * theta_rate;
  return nd / params.m;
}

std::array<double, 2> rotor_forces(double F, double M, const PlantParams& params) {
  const double differential = M / params.l;
  return {0.5 * (F - differential), 0.5 * (F + differential)};
}

std::array<double, 2> combine_rotor_forces(double f1, double f2,
                                           const PlantParams& params) {
  return {f1 + f2, (f2 - f1) * params.l};
}

PlantState plant_derivative(const PlantState& state, const ControlInput& u,
                            const PlantParams& params) {
  PlantState d;
  d.x1 = state.x2;
  d.x2 = eval_f2(params) + eval_g2(state.x3, params);
  d.x3 = state.x4;
  d.x4 = eval_g4(params) * u.u;
  return d;
}

}  // namespace bicopter
