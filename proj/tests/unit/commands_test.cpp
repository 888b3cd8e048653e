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

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "commands.hpp"

namespace ruinkit::cli {
namespace {

std::string scenario(const std::string& claims, const std::string& mech, const std::string& extra = "") {
    return R"({"model": {"c": 2, "lambda": 1, "claims": )" + claims + R"(}, "mechanism": )" + mech +
           R"(, "u_grid": [0, 2], "sim": {"n_paths": 20000, "seed": 31)" + extra + "}}";
}

const std::string kExp = R"({"family": "exponential", "rate": 1})";
const std::string kPareto = R"({"family": "pareto", "shape": 2.5, "scale": 1.5})";
const std::string kClassical = R"({"kind": "classical"})";

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

void expect_cells_valid(const std::vector<std::vector<std::string>>& rows) {
    ASSERT_FALSE(rows.empty());
    for (const auto& row : rows) {
        ASSERT_EQ(row.size(), rows.front().size());
        for (const std::string& c : row) EXPECT_FALSE(c.empty());
    }
}

TEST(SolveR, Cramer) {
    const CommandResult r = run_command("solve-r", scenario(kExp, kClassical), {});
    EXPECT_EQ(r.exit_code, kOk);
    EXPECT_EQ(r.output, "{\"regime\":\"cramer\",\"R\":0.5}\n");
}

TEST(SolveR, Heavy) {
    const CommandResult r = run_command("solve-r", scenario(kPareto, kClassical), {});
    EXPECT_EQ(r.exit_code, kOk);
    EXPECT_EQ(r.output, "{\"regime\":\"heavy\"}\n");
}

TEST(SolveR, NetProfitViolationIsConfigError) {
    std::string text = scenario(kExp, kClassical);
    text.replace(text.find("\"c\": 2"), 6, "\"c\": 0.5");
    const CommandResult r = run_command("solve-r", text, {});
    EXPECT_EQ(r.exit_code, kConfigError);
    EXPECT_NE(r.error.find("net profit condition violated"), std::string::npos);
}

TEST(Commands, UnknownCommandAndBadJson) {
    EXPECT_EQ(run_command("explode", scenario(kExp, kClassical), {}).exit_code, kConfigError);
    EXPECT_EQ(run_command("simulate", "{", {}).exit_code, kConfigError);
    EXPECT_EQ(run_command("simulate", scenario(kExp, kClassical), {std::nullopt, 0}).exit_code, kConfigError);
}

TEST(Asymptotics, ClassicalRatioIsOne) {
    const CommandResult r = run_command("asymptotics", scenario(kExp, kClassical), {});
    ASSERT_EQ(r.exit_code, kOk) << r.error;
    const auto rows = parse_csv(r.output);
    expect_cells_valid(rows);
    EXPECT_EQ(rows[0][0], "u");
    EXPECT_EQ(rows[0][6], "ratio_mc");
    EXPECT_EQ(rows[0].back(), "C_predicted");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i][6], "1");
        EXPECT_EQ(rows[i].back(), "1");
    }
}

TEST(Asymptotics, ConstantRescueBracketsTwoThirds) {
    const CommandResult r = run_command(
        "asymptotics", scenario(kExp, R"({"kind": "investor", "p": {"kind": "constant", "p": 0.5}})"), {});
    ASSERT_EQ(r.exit_code, kOk);
    const auto rows = parse_csv(r.output);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_LE(std::stod(rows[i][7]), 2.0 / 3.0);
        EXPECT_GE(std::stod(rows[i][8]), 2.0 / 3.0);
    }
}

TEST(Asymptotics, CumulativeParetoHasNoPredictedConstant) {
    const CommandResult r = run_command(
        "asymptotics",
        scenario(kPareto, R"({"kind": "cumulative_parisian_fixed", "r": 1})", R"(, "n_paths": 2000)"), {});
    ASSERT_EQ(r.exit_code, kOk);
    const auto rows = parse_csv(r.output);
    expect_cells_valid(rows);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].back(), "NA");
        EXPECT_EQ(rows[i][2], "NA");
    }
}

TEST(Overshoot, ColumnsAndBudgetExit) {
    const CommandResult ok = run_command("overshoot", scenario(kExp, kClassical), {std::nullopt, 200000});
    ASSERT_EQ(ok.exit_code, kOk) << ok.error;
    const auto rows = parse_csv(ok.output);
    expect_cells_valid(rows);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "empirical_tail_at_u", "p_infinity_tail", "ks_stat"}));
    EXPECT_EQ(rows.size(), OutputOptions{}.x_grid.size() + 1);

    const CommandResult partial = run_command("overshoot", scenario(kExp, kClassical), {std::nullopt, 100});
    EXPECT_EQ(partial.exit_code, kSampleBudgetExceeded);
    EXPECT_FALSE(partial.output.empty());
    EXPECT_FALSE(partial.error.empty());
}

TEST(Overshoot, HeavyLimitTailIsOne) {
    const CommandResult r = run_command(
        "overshoot", scenario(kPareto, kClassical, R"(, "n_paths": 5000, "barrier": {"mode": "fixed", "level": 60})"),
        {});
    const auto rows = parse_csv(r.output);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_NEAR(std::stod(rows[i][2]), 1.0, 1e-8);
        EXPECT_EQ(rows[i][3], "NA");
    }
}

TEST(Simulate, HeaderAndDeterminism) {
    const std::string text = scenario(kExp, R"({"kind": "parisian_fixed", "r": 0.5})");
    const CommandResult a = run_command("simulate", text, {});
    const CommandResult b = run_command("simulate", text, {});
    ASSERT_EQ(a.exit_code, kOk);
    EXPECT_EQ(a.output, b.output);
    EXPECT_EQ(a.output.substr(0, a.output.find('\n')),
              "u,p_hat,stderr,ci_lo,ci_hi,n,truncation_bias_bound,budget_exceeded");
    EXPECT_EQ(a.output.find('\r'), std::string::npos);
    EXPECT_NE(run_command("simulate", text, {7, std::nullopt}).output, a.output);
}

TEST(Constant, ReportJson) {
    const CommandResult r =
        run_command("constant", scenario(kExp, R"({"kind": "investor", "p": {"kind": "exp_decay", "kappa": 1}})"), {});
    ASSERT_EQ(r.exit_code, kOk);
    const std::size_t at = r.output.find("\"p0\": ");
    ASSERT_NE(at, std::string::npos) << r.output;
    EXPECT_NEAR(std::stod(r.output.substr(at + 6)), 0.25, 1e-12);
}

}  // namespace
}  // namespace ruinkit::cli
