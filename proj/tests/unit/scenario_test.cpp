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

#include <gtest/gtest.h>

#include "ruinkit/error.hpp"
#include "ruinkit/scenario.hpp"

namespace ruinkit {
namespace {

constexpr const char* kMinimal = R"({
  "model": {"c": 2, "lambda": 1, "claims": {"family": "exponential", "rate": 1}},
  "mechanism": {"kind": "classical"},
  "u_grid": [0, 1, 2]
})";

std::string with_mechanism(const std::string& mech) {
    return R"({"model": {"c": 2, "lambda": 1, "claims": {"family": "gamma", "shape": 2, "rate": 2}},
               "mechanism": )" +
           mech + R"(, "u_grid": [0.5],
               "sim": {"n_paths": 123, "seed": 18446744073709551615,
                       "barrier": {"mode": "fixed", "level": 30}, "max_events_per_path": 99, "workers": 2},
               "outputs": {"x_grid": [0, 1], "n_conditional": 7}})";
}

TEST(Scenario, DefaultsFillOptionalSections) {
    const Scenario s = parse_scenario(kMinimal);
    EXPECT_EQ(s.u_grid, (std::vector<double>{0, 1, 2}));
    EXPECT_EQ(s.sim, SimConfig{});
    EXPECT_EQ(s.outputs, OutputOptions{});
    EXPECT_TRUE(s.mechanism.is<mechanism::Classical>());
}

TEST(Scenario, RoundTripIsIdentityForEveryMechanism) {
    const char* mechanisms[] = {
        R"({"kind": "classical"})",
        R"({"kind": "parisian_fixed", "r": 1.0})",
        R"({"kind": "parisian_exp", "rate": 0.5})",
        R"({"kind": "cumulative_parisian_fixed", "r": 2.5})",
        R"({"kind": "cumulative_parisian_exp", "rate": 0.1})",
        R"({"kind": "omega", "rate_function": {"kind": "constant", "level": 0.5}})",
        R"({"kind": "omega", "rate_function": {"kind": "step", "breakpoints": [-1, -2.5], "levels": [0.1, 0.2, 0.7]}})",
        R"({"kind": "debit_interest", "beta": 0.3})",
        R"({"kind": "investor", "p": {"kind": "constant", "p": 0.5}})",
        R"({"kind": "investor", "p": {"kind": "exp_decay", "kappa": 1.0}})",
        R"({"kind": "investor", "p": {"kind": "table", "points": [[-3, 0.1], [-1, 0.4], [-0.1, 0.9]]}})",
    };
    for (const char* m : mechanisms) {
        const Scenario first = parse_scenario(with_mechanism(m));
        const std::string text = serialize_scenario(first);
        const Scenario second = parse_scenario(text);
        EXPECT_EQ(first, second) << m;
        EXPECT_EQ(text, serialize_scenario(second));
    }
}

TEST(Scenario, RoundTripKeepsAwkwardDoubles) {
    std::string text = kMinimal;
    text.replace(text.find("[0, 1, 2]"), 9, "[1e-300, 0.1, 0.30000000000000004]");
    const Scenario s = parse_scenario(text);
    EXPECT_EQ(parse_scenario(serialize_scenario(s)), s);
}

TEST(Scenario, FieldsOverrideDefaults) {
    const Scenario s = parse_scenario(with_mechanism(R"({"kind": "classical"})"));
    EXPECT_EQ(s.sim.n_paths, 123u);
    EXPECT_EQ(s.sim.seed, 18446744073709551615ull);
    EXPECT_EQ(s.sim.max_events_per_path, 99u);
    EXPECT_EQ(s.sim.workers, 2u);
    EXPECT_EQ(s.sim.barrier, BarrierMode(FixedBarrier{30.0}));
    EXPECT_EQ(s.outputs.n_conditional, 7u);
}

void expect_rejected(const std::string& text, const std::string& fragment) {
    try {
        parse_scenario(text);
        ADD_FAILURE() << "accepted: " << text;
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

TEST(Scenario, RejectsBadInput) {
    expect_rejected("{not json", "not valid JSON");
    expect_rejected("[1, 2]", "expected a JSON object");
    expect_rejected(R"({"model": {"c": 2, "lambda": 1, "claims": {"family": "exponential", "rate": 1}},
                        "mechanism": {"kind": "classical"}})",
                    "missing field 'u_grid'");

    std::string unsorted = kMinimal;
    unsorted.replace(unsorted.find("[0, 1, 2]"), 9, "[2, 1]");
    expect_rejected(unsorted, "sorted");

    std::string empty = kMinimal;
    empty.replace(empty.find("[0, 1, 2]"), 9, "[]");
    expect_rejected(empty, "must not be empty");

    std::string negative = kMinimal;
    negative.replace(negative.find("[0, 1, 2]"), 9, "[-1]");
    expect_rejected(negative, "u_grid");

    expect_rejected(with_mechanism(R"({"kind": "teleport"})"), "unknown kind");
    expect_rejected(with_mechanism(R"({"kind": "parisian_fixed"})"), "'r'");
    expect_rejected(with_mechanism(R"({"kind": "parisian_fixed", "r": "one"})"), "expected a number");
    expect_rejected(with_mechanism(R"({"kind": "parisian_fixed", "r": -1})"), "parisian");

    std::string family = kMinimal;
    family.replace(family.find("exponential"), 11, "cauchy");
    expect_rejected(family, "unknown family");
}

TEST(Scenario, NetProfitViolationSurfaces) {
    std::string text = kMinimal;
    text.replace(text.find("\"c\": 2"), 6, "\"c\": 0.5");
    EXPECT_THROW(parse_scenario(text), NetProfitViolated);
}

}  // namespace
}  // namespace ruinkit
