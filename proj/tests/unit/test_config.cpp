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

#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "bicopter/config.hpp"
#include "bicopter/errors.hpp"

namespace bicopter {
namespace {

using nlohmann::json;

std::string error_of(const json& j) {
  try {
    config_from_json(j).to_scenario();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, MinimalDocumentIsDefaultOctagon) {
  const ScenarioConfig c = config_from_json(json{{"schema_version", 1}});
  EXPECT_TRUE(c == ScenarioConfig{});
  const Scenario sc = c.to_scenario();
  EXPECT_EQ(sc.plan.waypoints.size(), 10u);
  EXPECT_EQ(sc.x0.x3, Vec2(0.0, 9.81));
  EXPECT_EQ(sc.dt, 1e-3);
  EXPECT_EQ(sc.cfg.gains.k2(), 1.0);
}

TEST(Config, JsonRoundtripPreservesEveryField) {
  ScenarioConfig c;
  c.params.m = 1.3;
  c.params.J = 0.25;
  c.params.l = 0.21;
  c.params.g = 9.8;
  c.cfg.gains = ControlGains(2.0, 0.5, 3.0);
  c.cfg.f_epsilon = 0.2;
  c.cfg.safe.xbar1 = Vec2(6.0, 4.0);
  c.cfg.safe.xbar2 = Vec2(0.7, 0.6);
  c.cfg.safe.chi_clamp = 1e-8;
  c.cfg.safe.zeta_clamp = 25.0;
  c.plan.kind = PlanConfig::Kind::kWaypoints;
  c.plan.waypoints = {Vec2(0.1, 0.2), Vec2(1.0 / 3.0, -2.0)};
  c.plan.v_max = 0.8;
  c.plan.a_max = 0.6;
  c.x0.x1 = Vec2(0.5, -0.25);
  c.x0.x2 = Vec2(0.1, 0.0);
  c.x0.x3 = Vec2(0.01, 12.0);
  c.x0.x4 = Vec2(-0.1, 0.3);
  c.dt = 5e-4;
  c.t_end = 12.5;
  c.output = "out/run.csv";
  c.tolerances.vdot_max = 1e-11;
  c.tolerances.dv_max = 1e-5;
  c.tolerances.setpoint_change = 1e-10;
  const ScenarioConfig back = config_from_json(json::parse(config_to_json(c).dump()));
  EXPECT_TRUE(back == c);
  EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(Config, ScenarioRoundtrip) {
  const ScenarioConfig c = config_from_json(json{{"schema_version", 1}});
  const Scenario sc = c.to_scenario();
  const ScenarioConfig c2 = config_from_scenario(sc, c.output);
  const Scenario sc2 = c2.to_scenario();
  EXPECT_EQ(sc2.plan.waypoints, sc.plan.waypoints);
  EXPECT_EQ(sc2.x0.flat(), sc.x0.flat());
  EXPECT_EQ(sc2.cfg.gains, sc.cfg.gains);
  EXPECT_EQ(sc2.tolerances, sc.tolerances);
  EXPECT_TRUE(config_from_json(config_to_json(c2)) == c2);
}

TEST(Config, FileRoundtrip) {
  const auto path = std::filesystem::temp_directory_path() / "bicopter_config_test.json";
  ScenarioConfig c;
  c.t_end = 3.0;
  save_config(c, path);
  EXPECT_TRUE(load_config(path) == c);
}

TEST(Config, SchemaVersion) {
  EXPECT_THROW(config_from_json(json::object()), ConfigError);
  EXPECT_THROW(config_from_json(json{{"schema_version", 2}}), ConfigError);
  EXPECT_THROW(config_from_json(json{{"schema_version", "1"}}), ConfigError);
}

TEST(Config, MessagesNameTheField) {
  EXPECT_NE(error_of({{"schema_version", 1}, {"initial_state", {{"v", {0.6, 0.0}}}}})
                .find("initial_state.v[0]"),
            std::string::npos);
  const std::string f0 = error_of({{"schema_version", 1}, {"initial_state", {{"F", 0.0}}}});
  EXPECT_NE(f0.find("initial_state.F"), std::string::npos);
  EXPECT_NE(f0.find("f_epsilon"), std::string::npos);
  EXPECT_NE(error_of({{"schema_version", 1}, {"plant", {{"mass", 1.0}}}}).find("plant.mass"),
            std::string::npos);
  EXPECT_NE(error_of({{"schema_version", 1}, {"plant", {{"m", "heavy"}}}}).find("plant.m"),
            std::string::npos);
  EXPECT_NE(error_of({{"schema_version", 1}, {"plan", {{"chamfer_fraction", 1.0}}}})
                .find("plan"),
            std::string::npos);
  EXPECT_NE(error_of({{"schema_version", 1}, {"controller", {{"k1", 2.0}, {"k2", 2.0}}}})
                .find("controller.k2"),
            std::string::npos);
  EXPECT_NE(error_of({{"schema_version", 1}, {"safe_set", {{"xbar1", {7.0}}}}})
                .find("safe_set.xbar1"),
            std::string::npos);
  EXPECT_NE(error_of({{"schema_version", 1}, {"simulation", {{"dt", 0.1}}}}).find("simulation"),
            std::string::npos);
  EXPECT_NE(error_of({{"schema_version", 1}, {"plan", {{"kind", "waypoints"}}}})
                .find("plan.waypoints"),
            std::string::npos);
  EXPECT_EQ(error_of({{"schema_version", 1}, {"controller", {{"k1", 2.0}, {"k2", 0.5}}}}), "");
}

TEST(Config, BadJsonFile) {
  const auto path = std::filesystem::temp_directory_path() / "bicopter_bad_config.json";
  {
    std::ofstream out(path);
    out << "{ \"schema_version\": 1, ";
  }
  EXPECT_THROW(load_config(path), ConfigError);
  EXPECT_THROW(load_config(path.string() + ".missing"), ConfigError);
}

}  // namespace
}  // namespace bicopter
