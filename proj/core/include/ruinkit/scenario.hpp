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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ruinkit/claims.hpp"
#include "ruinkit/mechanisms.hpp"
#include "ruinkit/simulate.hpp"

namespace ruinkit {

struct OutputOptions {
    /// Deficit levels tabulated by the overshoot report.
    std::vector<double> x_grid{0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0};
    /// Classical ruins collected for the overshoot report.
    std::uint64_t n_conditional = 10000;

    bool operator==(const OutputOptions&) const = default;
};

/// A model, a mechanism, the capitals to evaluate and how to simulate.
///
/// JSON layout:
///
///     {
///       "model": {"c": 2.0, "lambda": 1.0, "claims": {"family": "exponential", "rate": 1.0}},
///       "mechanism": {"kind": "investor", "p": {"kind": "exp_decay", "kappa": 1.0}},
///       "u_grid": [0, 1, 2, 5],
///       "sim": {"n_paths": 100000, "seed": 7,
///               "barrier": {"mode": "auto", "eps_trunc": 1e-4},
///               "max_events_per_path": 10000000},
///       "outputs": {"x_grid": [0, 0.5, 1], "n_conditional": 10000}
///     }
struct Scenario {
    ModelParams model;
    Mechanism mechanism;
    std::vector<double> u_grid;
    SimConfig sim;
    OutputOptions outputs;

    bool operator==(const Scenario&) const = default;
};

/// Parses and validates a scenario. Throws InvalidArgument (or
/// NetProfitViolated) with a message naming the offending field.
Scenario parse_scenario(std::string_view json_text);

Scenario load_scenario(const std::filesystem::path& path);

std::string serialize_scenario(const Scenario& scenario);

}  // namespace ruinkit
