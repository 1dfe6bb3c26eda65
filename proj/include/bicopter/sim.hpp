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

// Fixed-step closed-loop simulation, invariant monitors and the CSV log.

#ifndef BICOPTER_SIM_HPP_
#define BICOPTER_SIM_HPP_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bicopter/ctrl.hpp"
#include "bicopter/errors.hpp"
#include "bicopter/model.hpp"
#include "bicopter/traj.hpp"

namespace bicopter {

struct MonitorTolerances {
  // Largest accepted closed-form V' (it is a sum of negated squares).
  double vdot_max = 1e-12;
  // Largest accepted per-step increase of V while the setpoint is constant.
  double dv_max = 1e-6;
  // Consecutive setpoints closer than this are treated as the same setpoint.
  double setpoint_change = 1e-12;

  bool operator==(const MonitorTolerances&) const = default;
};

struct Scenario {
  PlantParams params;
  ControllerConfig cfg;
  WaypointPlan plan;
  PlantState x0;
  double dt = 1e-3;
  double t_end = 60.0;
  MonitorTolerances tolerances;

  // Throws ParameterError / SafeSetViolation / PlanError with a message
  // naming the failing field.
  void validate() const;
};

struct LogRow {
  double t = 0.0;
  PlantState x;
  ControlInput u;
  Vec2 x_d1 = Vec2::Zero();
  double V = 0.0;
  double V_dot = 0.0;
  std::array<double, 4> e_norms{};
  double det_psi = 0.0;

  bool operator==(const LogRow& o) const;
};

struct ScenarioLog {
  std::vector<LogRow> rows;

  bool empty() const { return rows.empty(); }
  std::size_t size() const { return rows.size(); }
};

// Raised by run_scenario; carries the log recorded up to the failing step.
class ScenarioFailure : public Error {
 public:
  enum class Kind { kSafeSet, kSingularity, kBlowup, kOther };

  ScenarioFailure(Kind kind, const std::string& what, ScenarioLog partial)
      : Error(what), kind_(kind), partial_(std::move(partial)) {}

  Kind kind() const { return kind_; }
  const ScenarioLog& partial_log() const { return partial_; }

 private:
  Kind kind_;
  ScenarioLog partial_;
};

// Classical RK4 with u held over the step. Throws IntegrationBlowup on a
// non-finite result.
PlantState rk4_step(const PlantState& state, const ControlInput& u, double dt,
                    const PlantParams& params);

// Number of integration steps for [0, t_end] at the given dt.
std::size_t step_count(double dt, double t_end);

ScenarioLog run_scenario(const Scenario& sc);

struct InvariantVerdict {
  std::string name;
  bool ok = true;
  std::size_t violations = 0;
  std::optional<double> first_t;
  std::string detail;
};

struct MonitorReport {
  std::vector<InvariantVerdict> verdicts;

  bool clean() const;
  // First violated invariant by time, if any.
  std::optional<InvariantVerdict> first_violation() const;
};

inline constexpr std::string_view kPositionInvariant = "position-bounds";
inline constexpr std::string_view kVelocityInvariant = "velocity-bounds";
inline constexpr std::string_view kVdotInvariant = "vdot-nonpositive";
inline constexpr std::string_view kMonotoneInvariant = "v-nonincreasing";

// Throws LogFormatError on an empty log.
MonitorReport monitor_invariants(const ScenarioLog& log, const Scenario& sc);

// Column names, in file order.
const std::vector<std::string>& log_columns();

void write_log(const ScenarioLog& log, const std::filesystem::path& path);
ScenarioLog read_log(const std::filesystem::path& path);

}  // namespace bicopter

#endif  // BICOPTER_SIM_HPP_
