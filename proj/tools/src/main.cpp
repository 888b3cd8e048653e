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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"ruinkit: ruin probabilities under modified ruin definitions"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> paths;

    const char* commands[][2] = {
        {"solve-r", "Classify the claim regime and solve for the adjustment coefficient"},
        {"asymptotics", "Analytic and Monte Carlo ruin probabilities over the u grid"},
        {"overshoot", "Empirical deficit law at the largest u against the limiting law"},
        {"simulate", "Monte Carlo ruin probability estimates over the u grid"},
        {"constant", "Asymptotic constants p0, q0 and C as JSON"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "Write output here instead of stdout");
        sub->add_option("--seed", seed, "Override the scenario seed");
        sub->add_option("--paths", paths, "Override the number of simulated paths");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ruinkit::cli::kConfigError;
    }

    std::ifstream in(scenario_path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();

    const std::string command = app.get_subcommands().front()->get_name();
    const ruinkit::cli::CommandResult result = ruinkit::cli::run_command(command, text.str(), {seed, paths});

    if (!result.output.empty()) {
        if (out_path.empty()) {
            std::cout << result.output << std::flush;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            out << result.output;
            if (!out) {
                std::cerr << "error: cannot write '" << out_path << "'\n";
                return ruinkit::cli::kConfigError;
            }
        }
    }
    if (!result.error.empty()) std::cerr << "error: " << result.error << '\n';
    return result.exit_code;
}
