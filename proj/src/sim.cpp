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

#include "bicopter/sim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace bicopter {

bool LogRow::operator==(const LogRow& o) const {
  return t == o.t && x.flat() == o.x.flat() && u.u == o.u.u && x_d1 == o.x_d1 &&
         V == o.V && V_dot == o.V_dot && e_norms == o.e_norms && det_psi == o.det_psi;
}

void Scenario::validate() const {
  params.validate();
  cfg.validate();
  if (!(dt > 0.0) || dt > 1e-2) {
    throw ParameterError("dt must lie in (0, 1e-2], got " + std::to_string(dt));
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw ParameterError("t_end must be finite and > 0");
  }
  plan.validate(cfg.safe);
  if (!x0.all_finite()) throw ParameterError("x0 has non-finite entries");
  for (int i = 0; i < 2; ++i) {
    if (!(std::abs(x0.x1[i]) < cfg.safe.xbar1[i])) {
      throw SafeSetViolation("x0 position component " + std::to_string(i + 1) +
                             " violates the position bound " +
                             std::to_string(cfg.safe.xbar1[i]));
    }
    if (!(std::abs(x0.x2[i]) < cfg.safe.xbar2[i])) {
      throw SafeSetViolation("x0 velocity component " + std::to_string(i + 1) +
                             " violates the velocity bound " +
                             std::to_string(cfg.safe.xbar2[i]));
    }
  }
  if (std::abs(x0.x3[1]) < cfg.f_epsilon) {
    throw ParameterError("x0 net force |F| = " + std::to_string(std::abs(x0.x3[1])) +
                         " is below the force-projection threshold f_epsilon = " +
                         std::to_string(cfg.f_epsilon));
  }
}

PlantState rk4_step(const PlantState& state, const ControlInput& u, double dt,
                    const PlantParams& params) {
  auto f = [&](const Vec8& x) {
    return plant_derivative(PlantState::from_flat(x), u, params).flat();
  };
  const Vec8 x = state.flat();
  const Vec8 k1 = f(x);
  const Vec8 k2 = f(x + 0.5 * dt * k1);
  const Vec8 k3 = f(x + 0.5 * dt * k2);
  const Vec8 k4 = f(x + dt * k3);
  const Vec8 next = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!next.allFinite()) {
    throw IntegrationBlowup("RK4 step produced a non-finite state");
  }
  return PlantState::from_flat(next);
}

std::size_t step_count(double dt, double t_end) {
  return static_cast<std::size_t>(std::llround(t_end / dt));
}

ScenarioLog run_scenario(const Scenario& sc) {
  sc.validate();
  const ReferenceTrajectory reference(sc.plan);
  const std::size_t steps = step_count(sc.dt, sc.t_end);

  ScenarioLog log;
  log.rows.reserve(steps + 1);
  PlantState x = sc.x0;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * sc.dt;
    try {
      const ReferenceSample ref = reference.sample(t);
      const ControllerOutput out = evaluate_controller(x, ref.x_d1, sc.cfg, sc.params);
      LogRow row;
      row.t = t;
      row.x = x;
      row.u = out.u;
      row.x_d1 = ref.x_d1;
      row.V = out.stack.V;
      row.V_dot = out.stack.V_dot;
      row.e_norms = {out.stack.e1.norm(), out.stack.e2.norm(), out.stack.e3.norm(),
                     out.stack.e4.norm()};
      const Mat2& psi = out.stack.Psi;
      row.det_psi = psi(0, 0) * psi(1, 1) - psi(0, 1) * psi(1, 0);
      log.rows.push_back(row);
      if (k == steps) break;
      x = rk4_step(x, out.u, sc.dt, sc.params);
    } catch (const SafeSetViolation& e) {
      throw ScenarioFailure(ScenarioFailure::Kind::kSafeSet,
                            "t = " + std::to_string(t) + ": " + e.what(), std::move(log));
    } catch (const ControllerSingularity& e) {
      throw ScenarioFailure(ScenarioFailure::Kind::kSingularity,
                            "t = " + std::to_string(t) + ": " + e.what(), std::move(log));
    } catch (const IntegrationBlowup& e) {
      throw ScenarioFailure(ScenarioFailure::Kind::kBlowup,
                            "t = " + std::to_string(t) + ": " + e.what(), std::move(log));
    } catch (const ReferenceInfeasible& e) {
      throw ScenarioFailure(ScenarioFailure::Kind::kOther,
                            "t = " + std::to_string(t) + ": " + e.what(), std::move(log));
    }
  }
  return log;
}

bool MonitorReport::clean() const {
  for (const auto& v : verdicts) {
    if (!v.ok) return false;
  }
  return true;
}

std::optional<InvariantVerdict> MonitorReport::first_violation() const {
  std::optional<InvariantVerdict> first;
  for (const auto& v : verdicts) {
    if (v.ok) continue;
    if (!first || *v.first_t < *first->first_t) first = v;
  }
  return first;
}

namespace {

void record(InvariantVerdict& v, double t, const std::string& detail) {
  if (v.ok) {
    v.ok = false;
    v.first_t = t;
    v.detail = detail;
  }
  ++v.violations;
}

}  // namespace

MonitorReport monitor_invariants(const ScenarioLog& log, const Scenario& sc) {
  if (log.empty()) throw LogFormatError("cannot monitor an empty log");
  const SafeSet& safe = sc.cfg.safe;
  const MonitorTolerances& tol = sc.tolerances;

  InvariantVerdict pos, vel, vdot, mono;
  pos.name = kPositionInvariant;
  vel.name = kVelocityInvariant;
  vdot.name = kVdotInvariant;
  mono.name = kMonotoneInvariant;

  for (std::size_t k = 0; k < log.rows.size(); ++k) {
    const LogRow& r = log.rows[k];
    for (int i = 0; i < 2; ++i) {
      if (!(std::abs(r.x.x1[i]) < safe.xbar1[i])) {
        record(pos, r.t, "|r" + std::to_string(i + 1) + "| = " +
                             std::to_string(std::abs(r.x.x1[i])) + " >= " +
                             std::to_string(safe.xbar1[i]));
      }
      if (!(std::abs(r.x.x2[i]) < safe.xbar2[i])) {
        record(vel, r.t, "|v" + std::to_string(i + 1) + "| = " +
                             std::to_string(std::abs(r.x.x2[i])) + " >= " +
                             std::to_string(safe.xbar2[i]));
      }
    }
    if (!(r.V_dot <= tol.vdot_max)) {
      record(vdot, r.t, "V' = " + std::to_string(r.V_dot));
    }
    if (k > 0) {
      const LogRow& prev = log.rows[k - 1];
      const bool same_setpoint =
          (r.x_d1 - prev.x_d1).cwiseAbs().maxCoeff() < tol.setpoint_change;
      if (same_setpoint && !(r.V - prev.V <= tol.dv_max)) {
        std::ostringstream msg;
        msg << "V increased by " << (r.V - prev.V) << " under a constant setpoint";
        record(mono, r.t, msg.str());
      }
    }
  }
  return MonitorReport{{pos, vel, vdot, mono}};
}

const std::vector<std::string>& log_columns() {
  static const std::vector<std::string> columns = {
      "t",  "r1",    "r2", "v1", "v2", "theta", "F",  "thetadot", "Fdot", "u1",
      "u2", "rd1",   "rd2", "V", "Vdot", "e1",  "e2", "e3",       "e4",   "detPsi"};
  return columns;
}

namespace {

std::array<double, 20> row_values(const LogRow& r) {
  return {r.t,          r.x.x1[0],    r.x.x1[1],    r.x.x2[0], r.x.x2[1],
          r.x.x3[0],    r.x.x3[1],    r.x.x4[0],    r.x.x4[1], r.u.u[0],
          r.u.u[1],     r.x_d1[0],    r.x_d1[1],    r.V,       r.V_dot,
          r.e_norms[0], r.e_norms[1], r.e_norms[2], r.e_norms[3], r.det_psi};
}

LogRow row_from_values(const std::array<double, 20>& v) {
  LogRow r;
  r.t = v[0];
  r.x.x1 = Vec2(v[1], v[2]);
  r.x.x2 = Vec2(v[3], v[4]);
  r.x.x3 = Vec2(v[5], v[6]);
  r.x.x4 = Vec2(v[7], v[8]);
  r.u.u = Vec2(v[9], v[10]);
  r.x_d1 = Vec2(v[11], v[12]);
  r.V = v[13];
  r.V_dot = v[14];
  r.e_norms = {v[15], v[16], v[17], v[18]};
  r.det_psi = v[19];
  return r;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string join_columns() {
  std::string header;
  for (const auto& c : log_columns()) {
    if (!header.empty()) header += ',';
    header += c;
  }
  return header;
}

}  // namespace

void write_log(const ScenarioLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LogFormatError("cannot open log for writing: " + path.string());
  out << join_columns() << '\n';
  char buf[64];
  for (const auto& row : log.rows) {
    const auto values = row_values(row);
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) line += ',';
      const auto res = std::to_chars(buf, buf + sizeof(buf), values[i],
                                     std::chars_format::general, 17);
      line.append(buf, res.ptr);
    }
    line += '\n';
    out << line;
  }
  if (!out) throw LogFormatError("write failed: " + path.string());
}

ScenarioLog read_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LogFormatError("cannot open log: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw LogFormatError("log has no header: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_commas(line);
  const auto& expected = log_columns();
  for (const auto& name : expected) {
    if (std::find(header.begin(), header.end(), name) == header.end()) {
      throw LogFormatError("log is missing column '" + name + "'");
    }
  }
  if (header.size() != expected.size() ||
      !std::equal(header.begin(), header.end(), expected.begin())) {
    throw LogFormatError("log header does not match the expected column order");
  }

  ScenarioLog log;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != expected.size()) {
      throw LogFormatError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(expected.size()) + " fields, got " +
                           std::to_string(fields.size()));
    }
    std::array<double, 20> values{};
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto f = fields[i];
      const auto res = std::from_chars(f.data(), f.data() + f.size(), values[i]);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
        throw LogFormatError("line " + std::to_string(line_no) + ": bad number in column '" +
                             expected[i] + "'");
      }
    }
    log.rows.push_back(row_from_values(values));
  }
  return log;
}

}  // namespace bicopter
