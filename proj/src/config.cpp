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

#include "bicopter/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bicopter/errors.hpp"

namespace bicopter {

using nlohmann::json;

namespace {

class Section {
 public:
  Section(const json& j, std::string path, std::set<std::string> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
    for (const auto& [key, value] : j_.items()) {
      if (!allowed.count(key)) throw ConfigError(field(key) + ": unknown field");
    }
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  const json& at(const std::string& key) const { return j_.at(key); }

  void number(const std::string& key, double& out) const {
    if (!has(key)) return;
    const json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(field(key) + ": expected a number");
    out = v.get<double>();
    if (!std::isfinite(out)) throw ConfigError(field(key) + ": must be finite");
  }

  void vec2(const std::string& key, Vec2& out) const {
    if (!has(key)) return;
    out = parse_vec2(j_.at(key), field(key));
  }

  static Vec2 parse_vec2(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw ConfigError(where + ": expected an array of two numbers");
    }
    return Vec2(v[0].get<double>(), v[1].get<double>());
  }

 private:
  const json& j_;
  std::string path_;
};

json vec_json(const Vec2& v) { return json::array({v[0], v[1]}); }

template <typename Fn>
void rethrow_as_config(const std::string& where, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace

WaypointPlan PlanConfig::resolve(const SafeSet& safe) const {
  if (kind == Kind::kOctagon) {
    return plan_octagon(safe, margin_fraction, chamfer_fraction, v_max, a_max);
  }
  WaypointPlan p;
  p.waypoints = waypoints;
  p.v_max = v_max;
  p.a_max = a_max;
  p.validate(safe);
  return p;
}

ScenarioConfig::ScenarioConfig() : x0(PlantState::hover(params)) {}

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
  return schema_version == o.schema_version && params.m == o.params.m &&
         params.J == o.params.J && params.l == o.params.l && params.g == o.params.g &&
         cfg.gains == o.cfg.gains && cfg.f_epsilon == o.cfg.f_epsilon &&
         cfg.safe.xbar1 == o.cfg.safe.xbar1 && cfg.safe.xbar2 == o.cfg.safe.xbar2 &&
         cfg.safe.chi_clamp == o.cfg.safe.chi_clamp &&
         cfg.safe.zeta_clamp == o.cfg.safe.zeta_clamp && plan == o.plan &&
         x0.flat() == o.x0.flat() && dt == o.dt && t_end == o.t_end &&
         output == o.output && tolerances == o.tolerances;
}

Scenario ScenarioConfig::to_scenario() const {
  if (schema_version != kConfigSchemaVersion) {
    throw ConfigError("schema_version: unsupported version " +
                      std::to_string(schema_version) + " (expected " +
                      std::to_string(kConfigSchemaVersion) + ")");
  }
  Scenario sc;
  sc.params = params;
  sc.cfg = cfg;
  sc.x0 = x0;
  sc.dt = dt;
  sc.t_end = t_end;
  sc.tolerances = tolerances;
  rethrow_as_config("plant", [&] { params.validate(); });
  rethrow_as_config("safe_set", [&] { cfg.safe.validate(); });
  rethrow_as_config("controller", [&] { cfg.validate(); });
  rethrow_as_config("plan", [&] { sc.plan = plan.resolve(cfg.safe); });
  for (int i = 0; i < 2; ++i) {
    const std::string idx = "[" + std::to_string(i) + "]";
    if (!(std::abs(x0.x1[i]) < cfg.safe.xbar1[i])) {
      throw ConfigError("initial_state.r" + idx + ": |r| = " +
                        std::to_string(std::abs(x0.x1[i])) +
                        " violates the position bound safe_set.xbar1" + idx + " = " +
                        std::to_string(cfg.safe.xbar1[i]));
    }
    if (!(std::abs(x0.x2[i]) < cfg.safe.xbar2[i])) {
      throw ConfigError("initial_state.v" + idx + ": |v| = " +
                        std::to_string(std::abs(x0.x2[i])) +
                        " violates the velocity bound safe_set.xbar2" + idx + " = " +
                        std::to_string(cfg.safe.xbar2[i]));
    }
  }
  if (!(std::abs(x0.x3[1]) >= cfg.f_epsilon)) {
    throw ConfigError("initial_state.F: |F| = " + std::to_string(std::abs(x0.x3[1])) +
                      " is below the force-projection threshold controller.f_epsilon = " +
                      std::to_string(cfg.f_epsilon) + "; the controller requires |F| >= f_epsilon");
  }
  rethrow_as_config("simulation", [&] { sc.validate(); });
  if (output.empty()) throw ConfigError("simulation.output: must not be empty");
  return sc;
}

ScenarioConfig config_from_scenario(const Scenario& sc, const std::string& output) {
  ScenarioConfig c;
  c.params = sc.params;
  c.cfg = sc.cfg;
  c.plan.kind = PlanConfig::Kind::kWaypoints;
  c.plan.waypoints = sc.plan.waypoints;
  c.plan.v_max = sc.plan.v_max;
  c.plan.a_max = sc.plan.a_max;
  c.x0 = sc.x0;
  c.dt = sc.dt;
  c.t_end = sc.t_end;
  c.output = output;
  c.tolerances = sc.tolerances;
  return c;
}

ScenarioConfig config_from_json(const json& j) {
  Section root(j, "", {"schema_version", "plant", "controller", "safe_set", "plan",
                       "initial_state", "simulation", "monitor"});
  ScenarioConfig c;
  if (!root.has("schema_version")) throw ConfigError("schema_version: missing");
  const json& sv = root.at("schema_version");
  if (!sv.is_number_integer()) throw ConfigError("schema_version: expected an integer");
  c.schema_version = sv.get<int>();
  if (c.schema_version != kConfigSchemaVersion) {
    throw ConfigError("schema_version: unsupported version " +
                      std::to_string(c.schema_version) + " (expected " +
                      std::to_string(kConfigSchemaVersion) + ")");
  }

  if (root.has("plant")) {
    Section s(root.at("plant"), "plant", {"m", "J", "l", "g"});
    s.number("m", c.params.m);
    s.number("J", c.params.J);
    s.number("l", c.params.l);
    s.number("g", c.params.g);
  }

  if (root.has("controller")) {
    Section s(root.at("controller"), "controller", {"k1", "k2", "k3", "k4", "f_epsilon"});
    double k1 = c.cfg.gains.k1();
    double k3 = c.cfg.gains.k3();
    double k4 = c.cfg.gains.k4();
    s.number("k1", k1);
    s.number("k3", k3);
    s.number("k4", k4);
    rethrow_as_config("controller", [&] { c.cfg.gains = ControlGains(k1, k3, k4); });
    if (s.has("k2")) {
      double k2 = 0.0;
      s.number("k2", k2);
      if (std::abs(k2 - c.cfg.gains.k2()) > 1e-12 * std::abs(c.cfg.gains.k2())) {
        throw ConfigError("controller.k2: must equal 1 / k1 = " +
                          std::to_string(c.cfg.gains.k2()));
      }
    }
    s.number("f_epsilon", c.cfg.f_epsilon);
  }

  if (root.has("safe_set")) {
    Section s(root.at("safe_set"), "safe_set", {"xbar1", "xbar2", "chi_clamp", "zeta_clamp"});
    s.vec2("xbar1", c.cfg.safe.xbar1);
    s.vec2("xbar2", c.cfg.safe.xbar2);
    s.number("chi_clamp", c.cfg.safe.chi_clamp);
    s.number("zeta_clamp", c.cfg.safe.zeta_clamp);
  }

  if (root.has("plan")) {
    Section s(root.at("plan"), "plan",
              {"kind", "margin_fraction", "chamfer_fraction", "waypoints", "v_max", "a_max"});
    if (s.has("kind")) {
      const json& k = s.at("kind");
      if (k == "octagon") {
        c.plan.kind = PlanConfig::Kind::kOctagon;
      } else if (k == "waypoints") {
        c.plan.kind = PlanConfig::Kind::kWaypoints;
      } else {
        throw ConfigError("plan.kind: expected \"octagon\" or \"waypoints\"");
      }
    }
    s.number("margin_fraction", c.plan.margin_fraction);
    s.number("chamfer_fraction", c.plan.chamfer_fraction);
    s.number("v_max", c.plan.v_max);
    s.number("a_max", c.plan.a_max);
    if (s.has("waypoints")) {
      const json& w = s.at("waypoints");
      if (!w.is_array()) throw ConfigError("plan.waypoints: expected an array");
      for (std::size_t i = 0; i < w.size(); ++i) {
        c.plan.waypoints.push_back(
            Section::parse_vec2(w[i], "plan.waypoints[" + std::to_string(i) + "]"));
      }
    }
    if (c.plan.kind == PlanConfig::Kind::kWaypoints && c.plan.waypoints.empty()) {
      throw ConfigError("plan.waypoints: required and non-empty when plan.kind is \"waypoints\"");
    }
    if (c.plan.kind == PlanConfig::Kind::kOctagon && !c.plan.waypoints.empty()) {
      throw ConfigError("plan.waypoints: not allowed when plan.kind is \"octagon\"");
    }
  }

  c.x0 = PlantState::hover(c.params);
  if (root.has("initial_state")) {
    Section s(root.at("initial_state"), "initial_state",
              {"r", "v", "theta", "F", "thetadot", "Fdot"});
    s.vec2("r", c.x0.x1);
    s.vec2("v", c.x0.x2);
    s.number("theta", c.x0.x3[0]);
    s.number("F", c.x0.x3[1]);
    s.number("thetadot", c.x0.x4[0]);
    s.number("Fdot", c.x0.x4[1]);
  }

  if (root.has("simulation")) {
    Section s(root.at("simulation"), "simulation", {"dt", "t_end", "output"});
    s.number("dt", c.dt);
    s.number("t_end", c.t_end);
    if (s.has("output")) {
      if (!s.at("output").is_string()) throw ConfigError("simulation.output: expected a string");
      c.output = s.at("output").get<std::string>();
    }
  }

  if (root.has("monitor")) {
    Section s(root.at("monitor"), "monitor", {"vdot_max", "dv_max", "setpoint_change"});
    s.number("vdot_max", c.tolerances.vdot_max);
    s.number("dv_max", c.tolerances.dv_max);
    s.number("setpoint_change", c.tolerances.setpoint_change);
  }
  return c;
}

json plan_to_json(const PlanConfig& p) {
  json j;
  if (p.kind == PlanConfig::Kind::kOctagon) {
    j["kind"] = "octagon";
    j["margin_fraction"] = p.margin_fraction;
    j["chamfer_fraction"] = p.chamfer_fraction;
  } else {
    j["kind"] = "waypoints";
    j["waypoints"] = json::array();
    for (const auto& w : p.waypoints) j["waypoints"].push_back(vec_json(w));
  }
  j["v_max"] = p.v_max;
  j["a_max"] = p.a_max;
  return j;
}

json config_to_json(const ScenarioConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["plant"] = {{"m", c.params.m}, {"J", c.params.J}, {"l", c.params.l}, {"g", c.params.g}};
  j["controller"] = {{"k1", c.cfg.gains.k1()},
                     {"k2", c.cfg.gains.k2()},
                     {"k3", c.cfg.gains.k3()},
                     {"k4", c.cfg.gains.k4()},
                     {"f_epsilon", c.cfg.f_epsilon}};
  j["safe_set"] = {{"xbar1", vec_json(c.cfg.safe.xbar1)},
                   {"xbar2", vec_json(c.cfg.safe.xbar2)},
                   {"chi_clamp", c.cfg.safe.chi_clamp},
                   {"zeta_clamp", c.cfg.safe.zeta_clamp}};
  j["plan"] = plan_to_json(c.plan);
  j["initial_state"] = {{"r", vec_json(c.x0.x1)},     {"v", vec_json(c.x0.x2)},
                        {"theta", c.x0.x3[0]},        {"F", c.x0.x3[1]},
                        {"thetadot", c.x0.x4[0]},     {"Fdot", c.x0.x4[1]}};
  j["simulation"] = {{"dt", c.dt}, {"t_end", c.t_end}, {"output", c.output}};
  j["monitor"] = {{"vdot_max", c.tolerances.vdot_max},
                  {"dv_max", c.tolerances.dv_max},
                  {"setpoint_change", c.tolerances.setpoint_change}};
  return j;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  return config_from_json(j);
}

void save_config(const ScenarioConfig& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config: " + path.string());
  out << config_to_json(c).dump(2) << '\n';
  if (!out) throw ConfigError("write failed: " + path.string());
}

}  // namespace bicopter
