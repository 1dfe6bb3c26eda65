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

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bicopter/commands.hpp"

namespace {

std::optional<std::filesystem::path> opt_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::filesystem::path(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Safety-constrained backstepping control of a planar bicopter"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::string log;
  std::int64_t seed = 42;
  std::int64_t count = 100;

  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write the CSV log");
  simulate->add_option("--config", config, "Scenario JSON (defaults when omitted)");
  simulate->add_option("--out", out, "Log path (overrides simulation.output)");

  auto* check = app.add_subcommand("check", "Re-run the invariant monitors on a log");
  check->add_option("log", log, "CSV log")->required();
  check->add_option("--config", config, "Scenario JSON the log was produced with");

  auto* verify = app.add_subcommand("verify-derivatives",
                                    "Compare closed-form derivatives with finite differences");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--count", count, "Number of random states");

  auto* plan = app.add_subcommand("plan", "Print the resolved waypoint plan");
  plan->add_option("--config", config, "Scenario JSON (defaults when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : bicopter::kExitInputError;
  }

  try {
    if (*simulate) return bicopter::cmd_simulate(opt_path(config), opt_path(out), std::cout, std::cerr);
    if (*check) return bicopter::cmd_check(log, opt_path(config), std::cout, std::cerr);
    if (*verify) return bicopter::cmd_verify_derivatives(seed, count, std::cout, std::cerr);
    if (*plan) return bicopter::cmd_plan(opt_path(config), std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bicopter::kExitRuntimeError;
  }
  return bicopter::kExitInputError;
}
