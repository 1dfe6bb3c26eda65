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

#include "bicopter/derivative_check.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bicopter/errors.hpp"
#include "bicopter/xform.hpp"

namespace bicopter {

namespace {

PlantState displaced(const PlantState& x, const PlantState& xdot, double h) {
  return PlantState::from_flat(x.flat() + h * xdot.flat());
}

template <typename Fn>
auto central_difference(const PlantState& x, const PlantState& xdot, double h, Fn&& q) {
  using R = decltype(q(x));
  const R p1 = q(displaced(x, xdot, h));
  const R m1 = q(displaced(x, xdot, -h));
  const R p2 = q(displaced(x, xdot, 2.0 * h));
  const R m2 = q(displaced(x, xdot, -2.0 * h));
  return R((8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h));
}

Mat2 jacobian_g2(const Vec2& x3, const PlantParams& params, double h) {
  Mat2 j;
  for (int c = 0; c < 2; ++c) {
    Vec2 dp = x3;
    Vec2 dm = x3;
    dp[c] += h;
    dm[c] -= h;
    j.col(c) = (eval_g2(dp, params) - eval_g2(dm, params)) / (2.0 * h);
  }
  return j;
}

}  // namespace

bool DerivativeReport::passed() const { return failing().empty(); }

std::vector<std::string> DerivativeReport::failing() const {
  std::vector<std::string> out;
  for (const auto& r : results) {
    if (!(r.worst_rel_error < threshold)) out.push_back(r.quantity);
  }
  return out;
}

double relative_error(const Eigen::Ref<const Eigen::MatrixXd>& analytic,
                      const Eigen::Ref<const Eigen::MatrixXd>& numeric) {
  const double diff = (analytic - numeric).cwiseAbs().maxCoeff();
  const double scale = std::max({analytic.cwiseAbs().maxCoeff(),
                                 numeric.cwiseAbs().maxCoeff(), 1.0});
  if (!std::isfinite(diff)) return std::numeric_limits<double>::infinity();
  return diff / scale;
}

PlantState random_interior_state(std::mt19937_64& rng, const ControllerConfig& cfg,
                                 const PlantParams& params) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  PlantState s;
  for (int i = 0; i < 2; ++i) {
    s.x1[i] = 0.9 * cfg.safe.xbar1[i] * unit(rng);
    s.x2[i] = 0.9 * cfg.safe.xbar2[i] * unit(rng);
  }
  const double hover = params.hover_thrust();
  s.x3 = Vec2(0.5 * unit(rng), hover * (1.0 + 0.5 * unit(rng)));
  s.x4 = Vec2(unit(rng), 2.0 * unit(rng));
  return s;
}

DerivativeReport verify_derivatives(const DerivativeCheckOptions& opts) {
  if (opts.count < 1) {
    throw ParameterError("count must be >= 1 (got " + std::to_string(opts.count) + ")");
  }
  opts.params.validate();
  opts.cfg.validate();

  const std::vector<std::string> names = {
      "N",      "Ndot",   "zeta1dot", "zeta2dot", "zeta1ddot", "zeta2ddot", "F1",
      "e2dot",  "e2ddot", "e3dot",    "Qdot",     "Qddot",     "e4dot",     "Vdot"};
  std::map<std::string, double> worst;
  for (const auto& n : names) worst[n] = 0.0;
  auto record = [&](const std::string& n, const Eigen::MatrixXd& a,
                    const Eigen::MatrixXd& b) {
    worst[n] = std::max(worst[n], relative_error(a, b));
  };

  const auto& params = opts.params;
  const auto& cfg = opts.cfg;
  const double h = opts.step;
  const double k4 = cfg.gains.k4();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  for (int n = 0; n < opts.count; ++n) {
    const PlantState x = random_interior_state(rng, cfg, params);
    const Vec2 x_d1(0.8 * cfg.safe.xbar1[0] * unit(rng), 0.8 * cfg.safe.xbar1[1] * unit(rng));
    const Vec2 z_d1 = desired_z1(x_d1, cfg.safe);

    const ErrorStack clean = error_stack(x, z_d1, cfg, params);
    ErrorStack s = clean;
    if (opts.tamper) opts.tamper(s);

    const Vec2 u = -invert_2x2(s.Psi) * (s.Phi + k4 * s.e4);
    ControlInput in;
    in.u = u;
    const PlantState xdot = plant_derivative(x, in, params);

    auto stack_at = [&](const PlantState& y) { return error_stack(y, z_d1, cfg, params); };
    auto fd = [&](auto&& q) { return central_difference(x, xdot, h, q); };

    record("N", s.N, jacobian_g2(x.x3, params, h));
    record("Ndot", s.N_dot,
           fd([&](const PlantState& y) -> Mat2 { return eval_N(y.x3, params); }));

    const TransformedState ts = transform_state(x, cfg.safe);
    const ZetaRates zr = zeta_rates(ts.zeta1, ts.zeta2, ts.z3, ts.z4, cfg.safe, params);
    record("zeta1dot", zr.zeta1_dot, fd([&](const PlantState& y) -> Vec2 {
             return transform_state(y, cfg.safe).zeta1;
           }));
    record("zeta2dot", zr.zeta2_dot, fd([&](const PlantState& y) -> Vec2 {
             return transform_state(y, cfg.safe).zeta2;
           }));
    auto rates_at = [&](const PlantState& y) {
      const TransformedState t = transform_state(y, cfg.safe);
      return zeta_rates(t.zeta1, t.zeta2, t.z3, t.z4, cfg.safe, params);
    };
    record("zeta1ddot", zr.zeta1_ddot,
           fd([&](const PlantState& y) -> Vec2 { return rates_at(y).zeta1_dot; }));
    record("zeta2ddot", zr.zeta2_ddot,
           fd([&](const PlantState& y) -> Vec2 { return rates_at(y).zeta2_dot; }));

    record("F1", s.z1_dot, fd([&](const PlantState& y) -> Vec2 {
             return transform_state(y, cfg.safe).z1;
           }));
    record("e2dot", s.e2_dot, fd([&](const PlantState& y) -> Vec2 { return stack_at(y).e2; }));
    record("e2ddot", s.e2_ddot,
           fd([&](const PlantState& y) -> Vec2 { return stack_at(y).e2_dot; }));
    record("e3dot", s.e3_dot, fd([&](const PlantState& y) -> Vec2 { return stack_at(y).e3; }));
    record("Qdot", s.Q_dot, fd([&](const PlantState& y) -> Mat2 { return stack_at(y).Q; }));
    record("Qddot", s.Q_ddot,
           fd([&](const PlantState& y) -> Mat2 { return stack_at(y).Q_dot; }));

    const Vec2 e4_dot = s.Phi - s.e3 + s.Psi * u;
    record("e4dot", e4_dot, fd([&](const PlantState& y) -> Vec2 { return stack_at(y).e4; }));

    Eigen::Matrix<double, 1, 1> vd;
    vd << s.V_dot;
    record("Vdot", vd, fd([&](const PlantState& y) -> Eigen::Matrix<double, 1, 1> {
             Eigen::Matrix<double, 1, 1> v;
             v << stack_at(y).V;
             return v;
           }));
  }

  DerivativeReport report;
  report.threshold = opts.threshold;
  for (const auto& n : names) report.results.push_back({n, worst[n]});
  return report;
}

}  // namespace bicopter
