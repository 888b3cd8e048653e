/*
   Copyright 2026 The ruinkit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ruinkit/scenario.hpp"

namespace ruinkit::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kRegimeUnavailable = 2,
    kSampleBudgetExceeded = 3,
};

struct CommandResult {
    int exit_code = kOk;
    std::string output;  // CSV or JSON, written even on exit code 3
    std::string error;   // one-line diagnostic for stderr
};

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> paths;
};

CommandResult cmd_solve_r(const Scenario& scenario);
CommandResult cmd_asymptotics(const Scenario& scenario);
CommandResult cmd_overshoot(const Scenario& scenario);
CommandResult cmd_simulate(const Scenario& scenario);
CommandResult cmd_constant(const Scenario& scenario);

/// Parses the scenario text, applies overrides and dispatches on `command`.
/// Library errors are mapped to exit codes; nothing propagates.
CommandResult run_command(std::string_view command, std::string_view scenario_json, const Overrides& overrides);

}  // namespace ruinkit::cli
