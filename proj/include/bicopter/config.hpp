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

// JSON scenario configuration.
//
// {
//   "schema_version": 1,
//   "plant":        {"m": 1, "J": 0.2, "l": 0.2, "g": 9.81},
//   "controller":   {"k1": 1, "k2": 1, "k3": 1, "k4": 1, "f_epsilon": 0.1},
//   "safe_set":     {"xbar1": [7, 5], "xbar2": [0.5, 0.5],
//                    "chi_clamp": 1e-9, "zeta_clamp": 30},
//   "plan":         {"kind": "octagon", "margin_fraction": 0.9,
//                    "chamfer_fraction": 0.5, "v_max": 1, "a_max": 1}
//                or {"kind": "waypoints", "waypoints": [[x, y], ...],
//                    "v_max": 1, "a_max": 1},
//   "initial_state": {"r": [0, 0], "v": [0, 0], "theta": 0, "F": 9.81,
//                     "thetadot": 0, "Fdot": 0},
//   "simulation":   {"dt": 1e-3, "t_end": 60, "output": "bicopter_log.csv"},
//   "monitor":      {"vdot_max": 1e-12, "dv_max": 1e-6, "setpoint_change": 1e-12}
// }
//
// Every section and field is optional and falls back to the defaults above;
// "F" defaults to m g. Unknown keys are rejected. "k2" may be given only if it
// equals 1 / k1.

#ifndef BICOPTER_CONFIG_HPP_
#define BICOPTER_CONFIG_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bicopter/sim.hpp"

namespace bicopter {

inline constexpr int kConfigSchemaVersion = 1;

struct PlanConfig {
  enum class Kind { kOctagon, kWaypoints };

  Kind kind = Kind::kOctagon;
  double margin_fraction = 0.9;
  double chamfer_fraction = 0.5;
  std::vector<Vec2> waypoints;
  double v_max = 1.0;
  double a_max = 1.0;

  // Throws PlanError.
  WaypointPlan resolve(const SafeSet& safe) const;

  bool operator==(const PlanConfig&) const = default;
};

struct ScenarioConfig {
  int schema_version = kConfigSchemaVersion;
  PlantParams params;
  ControllerConfig cfg;
  PlanConfig plan;
  PlantState x0;
  double dt = 1e-3;
  double t_end = 60.0;
  std::string output = "bicopter_log.csv";
  MonitorTolerances tolerances;

  ScenarioConfig();

  // Resolves the plan and validates everything. Throws ConfigError naming the
  // offending field.
  Scenario to_scenario() const;

  bool operator==(const ScenarioConfig& o) const;
};

// Explicit-waypoint configuration reproducing the given scenario.
ScenarioConfig config_from_scenario(const Scenario& sc, const std::string& output);

// Throws ConfigError with the JSON path of the offending field.
ScenarioConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ScenarioConfig& c);
nlohmann::json plan_to_json(const PlanConfig& p);

ScenarioConfig load_config(const std::filesystem::path& path);
void save_config(const ScenarioConfig& c, const std::filesystem::path& path);

}  // namespace bicopter

#endif  // BICOPTER_CONFIG_HPP_
