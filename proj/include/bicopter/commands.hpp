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

// Command implementations behind the bicopter executable. Each returns the
// process exit status and writes human-readable output to `out`, diagnostics
// to `err`.

#ifndef BICOPTER_COMMANDS_HPP_
#define BICOPTER_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>

#include "bicopter/ctrl.hpp"

namespace bicopter {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitRuntimeError = 3;

// Environment variable that redirects every written file into a directory.
inline constexpr const char* kOutputDirEnv = "BICOPTER_OUTPUT_DIR";

// The --out flag if given, else the configured path; when the environment
// variable is set the file name is kept and the directory replaced.
std::filesystem::path resolve_output_path(const std::string& configured,
                                          const std::optional<std::filesystem::path>& flag);

// A missing config path means the built-in defaults.
int cmd_simulate(const std::optional<std::filesystem::path>& config_path,
                 const std::optional<std::filesystem::path>& out_path, std::ostream& out,
                 std::ostream& err);

int cmd_check(const std::filesystem::path& log_path,
              const std::optional<std::filesystem::path>& config_path, std::ostream& out,
              std::ostream& err);

int cmd_verify_derivatives(std::int64_t seed, std::int64_t count, std::ostream& out,
                           std::ostream& err,
                           const std::function<void(ErrorStack&)>& tamper = {});

int cmd_plan(const std::optional<std::filesystem::path>& config_path, std::ostream& out,
             std::ostream& err);

}  // namespace bicopter

#endif  // BICOPTER_COMMANDS_HPP_
