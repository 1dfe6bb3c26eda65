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

#include "bicopter/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>

#include "bicopter/config.hpp"
#include "bicopter/derivative_check.hpp"
#include "bicopter/errors.hpp"
#include "bicopter/sim.hpp"
#include "bicopter/traj.hpp"

namespace bicopter {

namespace fs = std::filesystem;

namespace {

ScenarioConfig config_or_default(const std::optional<fs::path>& path) {
  return path ? load_config(*path) : ScenarioConfig{};
}

struct LogSummary {
  double final_error = 0.0;
  Vec2 max_abs_r = Vec2::Zero();
  Vec2 max_abs_v = Vec2::Zero();
  double min_det_psi = std::numeric_limits<double>::infinity();
};

LogSummary summarize(const ScenarioLog& log) {
  LogSummary s;
  for (const auto& row : log.rows) {
    s.max_abs_r = s.max_abs_r.cwiseMax(row.x.x1.cwiseAbs());
    s.max_abs_v = s.max_abs_v.cwiseMax(row.x.x2.cwiseAbs());
    s.min_det_psi = std::min(s.min_det_psi, std::abs(row.det_psi));
  }
  if (!log.empty()) s.final_error = (log.rows.back().x.x1 - log.rows.back().x_d1).norm();
  return s;
}

void print_summary(const ScenarioLog& log, std::ostream& out) {
  const LogSummary s = summarize(log);
  out << std::setprecision(6);
  out << "rows: " << log.size();
  if (!log.empty()) out << "  t_final: " << log.rows.back().t;
  out << '\n';
  out << "final position error: " << s.final_error << " m\n";
  out << "max |r|: [" << s.max_abs_r[0] << ", " << s.max_abs_r[1] << "] m\n";
  out << "max |v|: [" << s.max_abs_v[0] << ", " << s.max_abs_v[1] << "] m/s\n";
  out << "min |det Psi|: " << s.min_det_psi << '\n';
}

void print_verdicts(const MonitorReport& report, std::ostream& out) {
  for (const auto& v : report.verdicts) {
    out << v.name << ": " << (v.ok ? "OK" : "VIOLATED");
    if (!v.ok) {
      out << " (" << v.violations << " samples, first at t = " << std::setprecision(17)
          << v.first_t.value_or(0.0) << std::setprecision(6) << ")";
      if (!v.detail.empty()) out << " " << v.detail;
    }
    out << '\n';
  }
}

bool position_and_velocity_ok(const MonitorReport& report) {
  for (const auto& v : report.verdicts) {
    if ((v.name == kPositionInvariant || v.name == kVelocityInvariant) && !v.ok) return false;
  }
  return true;
}

}  // namespace

fs::path resolve_output_path(const std::string& configured,
                             const std::optional<fs::path>& flag) {
  fs::path p = flag ? *flag : fs::path(configured);
  const char* dir = std::getenv(kOutputDirEnv);
  if (dir != nullptr && *dir != '\0') p = fs::path(dir) / p.filename();
  return p;
}

int cmd_simulate(const std::optional<fs::path>& config_path,
                 const std::optional<fs::path>& out_path, std::ostream& out,
                 std::ostream& err) {
  ScenarioConfig cfg;
  Scenario sc;
  try {
    cfg = config_or_default(config_path);
    sc = cfg.to_scenario();
  } catch (const Error& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return kExitInputError;
  }
  const fs::path log_path = resolve_output_path(cfg.output, out_path);

  ScenarioLog log;
  std::optional<ScenarioFailure> failure;
  try {
    log = run_scenario(sc);
  } catch (const ScenarioFailure& f) {
    failure = f;
    log = f.partial_log();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }

  try {
    if (log_path.has_parent_path()) fs::create_directories(log_path.parent_path());
    write_log(log, log_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  out << "log: " << log_path.string() << '\n';
  print_summary(log, out);

  if (failure) {
    const bool safe = failure->kind() != ScenarioFailure::Kind::kSafeSet;
    out << "safe-set: " << (safe ? "not evaluated" : "VIOLATED") << '\n';
    err << "error: simulation aborted: " << failure->what() << '\n';
    return kExitRuntimeError;
  }

  const MonitorReport report = monitor_invariants(log, sc);
  print_verdicts(report, out);
  out << "safe-set: " << (position_and_velocity_ok(report) ? "OK" : "VIOLATED") << '\n';
  return report.clean() ? kExitOk : kExitVerificationFailure;
}

int cmd_check(const fs::path& log_path, const std::optional<fs::path>& config_path,
              std::ostream& out, std::ostream& err) {
  Scenario sc;
  ScenarioLog log;
  try {
    sc = config_or_default(config_path).to_scenario();
    log = read_log(log_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  if (log.empty()) {
    err << "error: log has no rows: " << log_path.string() << '\n';
    return kExitInputError;
  }
  const MonitorReport report = monitor_invariants(log, sc);
  print_verdicts(report, out);
  if (auto first = report.first_violation()) {
    out << "first violation: " << first->name << " at t = " << std::setprecision(17)
        << first->first_t.value_or(0.0) << '\n';
    return kExitVerificationFailure;
  }
  out << "all invariants hold over " << log.size() << " rows\n";
  return kExitOk;
}

int cmd_verify_derivatives(std::int64_t seed, std::int64_t count, std::ostream& out,
                           std::ostream& err,
                           const std::function<void(ErrorStack&)>& tamper) {
  if (count < 1) {
    err << "error: --count must be >= 1 (got " << count << ")\n";
    return kExitInputError;
  }
  DerivativeCheckOptions opts;
  opts.seed = static_cast<std::uint64_t>(seed);
  opts.count = static_cast<int>(std::min<std::int64_t>(count, std::numeric_limits<int>::max()));
  opts.tamper = tamper;
  DerivativeReport report;
  try {
    report = verify_derivatives(opts);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  out << "seed " << seed << ", " << count << " states, threshold " << report.threshold << '\n';
  for (const auto& r : report.results) {
    out << std::left << std::setw(10) << r.quantity << ' ' << std::scientific
        << std::setprecision(3) << r.worst_rel_error << std::defaultfloat << "  "
        << (r.worst_rel_error < report.threshold ? "ok" : "FAIL") << '\n';
  }
  const auto bad = report.failing();
  if (!bad.empty()) {
    out << "failed:";
    for (const auto& n : bad) out << ' ' << n;
    out << '\n';
    return kExitVerificationFailure;
  }
  return kExitOk;
}

int cmd_plan(const std::optional<fs::path>& config_path, std::ostream& out,
             std::ostream& err) {
  ScenarioConfig cfg;
  WaypointPlan plan;
  try {
    cfg = config_or_default(config_path);
    plan = cfg.plan.resolve(cfg.cfg.safe);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  const ReferenceTrajectory traj(plan);
  out << std::setprecision(10);
  out << "waypoints: " << plan.waypoints.size() << '\n';
  for (std::size_t i = 0; i < plan.waypoints.size(); ++i) {
    out << "  " << i << ": (" << plan.waypoints[i][0] << ", " << plan.waypoints[i][1] << ")\n";
  }
  out << "total duration: " << traj.total_duration() << " s\n";
  nlohmann::json section;
  section["plan"] = plan_to_json(cfg.plan);
  out << section.dump(2) << '\n';
  return kExitOk;
}

}  // namespace bicopter
