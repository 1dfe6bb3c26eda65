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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bicopter/commands.hpp"
#include "bicopter/ctrl.hpp"
#include "bicopter/model.hpp"
#include "bicopter/sim.hpp"
#include "bicopter/traj.hpp"
#include "bicopter/xform.hpp"

namespace {

using namespace bicopter;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Scenario baseline_scenario() {
  Scenario sc;
  sc.params = PlantParams{1.0, 0.2, 0.2, 9.81};
  sc.cfg.gains = ControlGains(1.0, 1.0, 1.0);
  sc.cfg.safe.xbar1 = Vec2(7.0, 5.0);
  sc.cfg.safe.xbar2 = Vec2(0.5, 0.5);
  sc.x0 = PlantState::hover(sc.params);
  sc.dt = 1e-3;
  return sc;
}

Scenario regulation_scenario(double t_end, double dt) {
  Scenario sc = baseline_scenario();
  sc.plan.waypoints = {Vec2(3.0, 2.0)};
  sc.t_end = t_end;
  sc.dt = dt;
  return sc;
}

// Logs gathered by the simulation criteria and reused by criterion 6.
std::vector<ScenarioLog> g_logs;

Verdict octagon_invariance() {
  Scenario sc = baseline_scenario();
  sc.plan = plan_octagon(sc.cfg.safe);
  const auto start = std::chrono::steady_clock::now();
  ScenarioLog log;
  std::string abort;
  try {
    log = run_scenario(sc);
  } catch (const ScenarioFailure& f) {
    log = f.partial_log();
    abort = f.what();
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  g_logs.push_back(log);

  std::size_t bad = 0;
  for (const auto& r : log.rows) {
    if (!sc.cfg.safe.contains(r.x.x1, r.x.x2)) ++bad;
  }
  Verdict v;
  v.pass = abort.empty() && bad == 0 && wall < 10.0;
  std::ostringstream d;
  d << log.size() << " samples to t = " << (log.empty() ? 0.0 : log.rows.back().t) << " s of "
    << sc.t_end << " s, " << bad << " logged violations, wall " << fmt("%.2f", wall) << " s";
  if (!abort.empty()) d << "; aborted: " << abort;
  v.detail = d.str();
  return v;
}

double max_constant_setpoint_increase(const ScenarioLog& log) {
  double worst = -INFINITY;
  for (std::size_t k = 1; k < log.size(); ++k) {
    if ((log.rows[k].x_d1 - log.rows[k - 1].x_d1).cwiseAbs().maxCoeff() < 1e-12) {
      worst = std::max(worst, log.rows[k].V - log.rows[k - 1].V);
    }
  }
  return worst;
}

// Same run with the feedback re-evaluated at every RK4 stage instead of held
// over the step. Reported alongside the verdict; it does not decide it.
double continuous_feedback_fd_error(const Scenario& sc) {
  const Vec2 xd = sc.plan.waypoints.front();
  auto f = [&](const Vec8& v) {
    const PlantState s = PlantState::from_flat(v);
    return plant_derivative(s, control_law(s, xd, sc.cfg, sc.params), sc.params).flat();
  };
  const std::size_t steps = step_count(sc.dt, sc.t_end);
  std::vector<double> V, Vdot;
  Vec8 x = sc.x0.flat();
  for (std::size_t k = 0; k <= steps; ++k) {
    const ErrorStack s =
        evaluate_controller(PlantState::from_flat(x), xd, sc.cfg, sc.params).stack;
    V.push_back(s.V);
    Vdot.push_back(s.V_dot);
    const Vec8 k1 = f(x);
    const Vec8 k2 = f(x + 0.5 * sc.dt * k1);
    const Vec8 k3 = f(x + 0.5 * sc.dt * k2);
    const Vec8 k4 = f(x + sc.dt * k3);
    x += sc.dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < V.size(); ++k) {
    worst = std::max(worst, std::abs((V[k + 1] - V[k - 1]) / (2.0 * sc.dt) - Vdot[k]));
  }
  return worst;
}

Verdict lyapunov_decrease() {
  const Scenario fine = regulation_scenario(5.0, 1e-4);
  const ScenarioLog log = run_scenario(fine);
  g_logs.push_back(log);
  double fd_err = 0.0;
  for (std::size_t k = 1; k + 1 < log.size(); ++k) {
    const double fd = (log.rows[k + 1].V - log.rows[k - 1].V) / (2.0 * fine.dt);
    fd_err = std::max(fd_err, std::abs(fd - log.rows[k].V_dot));
  }
  const ScenarioLog coarse = run_scenario(regulation_scenario(60.0, 1e-3));
  g_logs.push_back(coarse);
  const double dv = std::max(max_constant_setpoint_increase(log),
                             max_constant_setpoint_increase(coarse));
  Verdict v;
  v.pass = fd_err < 1e-3 && dv <= 1e-6;
  v.detail = "max |dV/dt(fd) - Vdot| = " + fmt("%.3e", fd_err) +
             " (dt = 1e-4, 5 s, zero-order hold), max per-step dV = " + fmt("%.3e", dv) +
             "; with per-stage feedback the fd mismatch is " +
             fmt("%.3e", continuous_feedback_fd_error(fine));
  return v;
}

Verdict regulation_limits() {
  const Scenario sc = regulation_scenario(60.0, 1e-3);
  const ScenarioLog log = run_scenario(sc);
  const LogRow& r = log.rows.back();
  const double pos = (r.x.x1 - Vec2(3.0, 2.0)).norm();
  const double vel = r.x.x2.norm();
  const double th = std::abs(r.x.x3[0]);
  const double df = std::abs(r.x.x3[1] - sc.params.m * sc.params.g);
  const double u = r.u.u.norm();
  Verdict v;
  v.pass = pos < 1e-3 && vel < 1e-4 && th < 1e-4 && df < 1e-3 && u < 1e-4;
  v.detail = "at t = 60 s: |x1 - xd| = " + fmt("%.2e", pos) + ", |x2| = " + fmt("%.2e", vel) +
             ", |theta| = " + fmt("%.2e", th) + ", |F - mg| = " + fmt("%.2e", df) +
             ", |u| = " + fmt("%.2e", u);
  return v;
}

Verdict derivative_oracle() {
  std::ostringstream out, err;
  const int rc = cmd_verify_derivatives(42, 100, out, err);
  double worst = 0.0;
  std::string worst_name;
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    std::istringstream ls(line);
    std::string name;
    double e = 0.0;
    if (ls >> name >> e && e >= worst) {
      worst = e;
      worst_name = name;
    }
  }
  Verdict v;
  v.pass = rc == kExitOk && worst < 1e-5;
  v.detail = "verify-derivatives --seed 42 --count 100 exit " + std::to_string(rc) +
             ", worst " + worst_name + " " + fmt("%.3e", worst);
  return v;
}

Verdict jacobian_identity() {
  PlantParams p;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> th(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> f(-20.0, 20.0);
  const double h = 1e-6;
  double rel = 0.0;
  double det = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Vec2 x3(th(rng), f(rng));
    Mat2 fd;
    for (int c = 0; c < 2; ++c) {
      Vec2 xp = x3, xm = x3;
      xp[c] += h;
      xm[c] -= h;
      fd.col(c) = (eval_g2(xp, p) - eval_g2(xm, p)) / (2.0 * h);
    }
    const Mat2 an = eval_N(x3, p);
    rel = std::max(rel, (an - fd).cwiseAbs().maxCoeff() / std::max(1.0, an.cwiseAbs().maxCoeff()));
    const double d = an(0, 0) * an(1, 1) - an(0, 1) * an(1, 0);
    det = std::max(det, std::abs(d + x3[1] / (p.m * p.m)));
  }
  Verdict v;
  v.pass = rel < 1e-6 && det < 1e-12;
  v.detail = "max rel |N - fd| = " + fmt("%.2e", rel) + ", max |det N + F/m^2| = " +
             fmt("%.2e", det);
  return v;
}

Verdict psi_boundary() {
  const Scenario sc = baseline_scenario();
  PlantState x = sc.x0;
  x.x1 = Vec2(2.0, -1.0);
  x.x2 = Vec2(0.2, -0.1);
  x.x3[0] = 0.25;
  x.x4 = Vec2(0.1, 0.3);
  const std::vector<double> forces = {-1.0, -0.5, -0.1, 0.1, 0.5, 1.0};
  std::vector<double> dets;
  for (double F : forces) {
    x.x3[1] = F;
    const Mat2 psi = error_stack(x, Vec2::Zero(), sc.cfg, sc.params).Psi;
    dets.push_back(psi(0, 0) * psi(1, 1) - psi(0, 1) * psi(1, 0));
  }
  double sf = 0, sd = 0, sff = 0, sfd = 0;
  const double n = static_cast<double>(forces.size());
  for (std::size_t i = 0; i < forces.size(); ++i) {
    sf += forces[i];
    sd += dets[i];
    sff += forces[i] * forces[i];
    sfd += forces[i] * dets[i];
  }
  const double slope = (n * sfd - sf * sd) / (n * sff - sf * sf);
  const double icpt = (sd - slope * sf) / n;
  double resid = 0.0;
  for (std::size_t i = 0; i < forces.size(); ++i) {
    resid = std::max(resid, std::abs(dets[i] - (slope * forces[i] + icpt)));
  }

  const double floor = psi_det_lower_bound(sc.cfg, sc.params);
  double min_det = INFINITY;
  std::size_t samples = 0;
  for (const auto& log : g_logs) {
    for (const auto& r : log.rows) {
      min_det = std::min(min_det, std::abs(r.det_psi));
      ++samples;
    }
  }
  Verdict v;
  v.pass = resid < 1e-9 && floor > 0.0 && samples > 0 && min_det >= floor;
  v.detail = "fit slope " + fmt("%.6g", slope) + ", intercept " + fmt("%.2e", icpt) +
             ", max residual " + fmt("%.2e", resid) + "; min |det Psi| " + fmt("%.4g", min_det) +
             " over " + std::to_string(samples) + " simulated states, floor " +
             fmt("%.3e", floor);
  return v;
}

Verdict transform_roundtrip() {
  SafeSet s;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> chi(-0.999, 0.999);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const Vec2 x1 = s.xbar1.cwiseProduct(Vec2(chi(rng), chi(rng)));
    const Vec2 x2 = s.xbar2.cwiseProduct(Vec2(chi(rng), chi(rng)));
    const TransformedPair z = forward_map(x1, x2, s);
    const PhysicalPair back = inverse_map(z.z1, z.z2, s);
    worst = std::max({worst, (back.x1 - x1).cwiseAbs().maxCoeff(),
                      (back.x2 - x2).cwiseAbs().maxCoeff()});
  }
  Verdict v;
  v.pass = worst < 1e-10;
  v.detail = "max |inverse(forward(x)) - x| = " + fmt("%.2e", worst) + " over 10000 points";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Verdict (*run)();
  };
  const Criterion criteria[] = {
      {1, "safe-set forward invariance (octagon)", octagon_invariance},
      {2, "Lyapunov decrease", lyapunov_decrease},
      {3, "regulation limits", regulation_limits},
      {4, "derivative oracle", derivative_oracle},
      {5, "Jacobian identity", jacobian_identity},
      {6, "Psi singularity boundary", psi_boundary},
      {7, "transformation roundtrip", transform_roundtrip},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failed;
    std::printf("[%s] criterion %d: %s -- %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str());
  }
  std::printf("%d of 7 criteria passed\n", 7 - failed);
  return failed == 0 ? 0 : 1;
}
