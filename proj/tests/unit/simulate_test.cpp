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

#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "ruinkit/analytic.hpp"
#include "ruinkit/error.hpp"
#include "ruinkit/simulate.hpp"

namespace ruinkit {
namespace {

const ModelParams kExpModel(2.0, 1.0, Exponential{1.0});

SimConfig config(std::uint64_t n, std::uint64_t seed = 20261016, unsigned workers = 1) {
    SimConfig cfg;
    cfg.n_paths = n;
    cfg.seed = seed;
    cfg.workers = workers;
    return cfg;
}

TEST(SimConfig, Validation) {
    SimConfig cfg;
    cfg.n_paths = 0;
    EXPECT_THROW(cfg.validate(), InvalidArgument);
    cfg = SimConfig{};
    cfg.barrier = AutoBarrier{0.0};
    EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Barrier, CramerLundbergLevel) {
    const Barrier b = resolve_barrier(kExpModel, 2.0, AutoBarrier{1e-4});
    EXPECT_NEAR(b.level, 2.0 + std::log(1e4) / 0.5, 1e-9);
    EXPECT_NEAR(b.bias_bound, 1e-4, 1e-12);
    EXPECT_FALSE(b.heuristic);
}

TEST(Barrier, HeavyLevelIsHeuristic) {
    const ModelParams pareto(2.0, 1.0, Pareto{2.5, 1.5});
    const Barrier b = resolve_barrier(pareto, 1.0, AutoBarrier{1e-3});
    EXPECT_TRUE(b.heuristic);
    EXPECT_GT(b.level, 1.0);
    EXPECT_LE(psi_classical(pareto, b.level - 1.0).value, 1e-3 * (1.0 + 1e-9));
}

TEST(Barrier, FixedMustExceedU) {
    EXPECT_THROW(resolve_barrier(kExpModel, 5.0, FixedBarrier{4.0}), InvalidArgument);
    EXPECT_DOUBLE_EQ(resolve_barrier(kExpModel, 5.0, FixedBarrier{40.0}).level, 40.0);
}

TEST(Estimators, BinomialInterval) {
    const Estimate e = binomial_estimate(250, 1000);
    EXPECT_DOUBLE_EQ(e.p_hat, 0.25);
    EXPECT_NEAR(e.std_error, std::sqrt(0.25 * 0.75 / 1000), 1e-15);
    EXPECT_NEAR(e.ci_hi - e.ci_lo, 2 * 1.959963984540054 * e.std_error, 1e-12);
    const Estimate zero = binomial_estimate(0, 1000);
    EXPECT_EQ(zero.ci_lo, 0.0);
    EXPECT_EQ(zero.ci_hi, 0.0);
}

TEST(Estimators, RatioInterval) {
    const RatioEstimate r = ratio_estimate(30, 60, 1000);
    EXPECT_DOUBLE_EQ(r.ratio, 0.5);
    EXPECT_NEAR(r.std_error, std::sqrt(0.25 / 60), 1e-12);
    EXPECT_THROW(ratio_estimate(0, 0, 1000), ZeroDenominator);
}

TEST(Simulation, ClassicalMatchesExactRuinProbability) {
    for (double u : {0.0, 1.0, 2.0, 5.0}) {
        const Estimate e = estimate_ruin(kExpModel, mechanism::Classical{}, u, config(100000));
        const double exact = psi_classical(kExpModel, u).value;
        EXPECT_NEAR(e.p_hat, exact, 3.0 * e.std_error + e.truncation_bias_bound) << "u=" << u;
    }
}

TEST(Simulation, WorkerCountDoesNotChangeResults) {
    const Mechanism m = mechanism::ParisianExponential{0.5};
    const std::vector<PathOutcome> one = simulate_paths(kExpModel, m, 1.0, config(20000, 4, 1));
    const std::vector<PathOutcome> many = simulate_paths(kExpModel, m, 1.0, config(20000, 4, 3));
    EXPECT_EQ(one, many);
}

TEST(Simulation, SeedsMatter) {
    const Estimate a = estimate_ruin(kExpModel, mechanism::Classical{}, 1.0, config(20000, 1));
    const Estimate b = estimate_ruin(kExpModel, mechanism::Classical{}, 1.0, config(20000, 2));
    EXPECT_NE(a.p_hat, b.p_hat);
}

TEST(Simulation, ModifiedRuinImpliesClassicalRuin) {
    for (const Mechanism& m : {Mechanism(mechanism::ParisianFixed{0.5}), Mechanism(mechanism::Omega{ConstantRate{1.0}}),
                               Mechanism(mechanism::DebitInterest{0.3}),
                               Mechanism(mechanism::CumulativeParisianFixed{1.0})}) {
        for (const PathOutcome& p : simulate_paths(kExpModel, m, 0.5, config(20000))) {
            if (p.verdict == PathVerdict::Ruined) ASSERT_TRUE(p.classical_ruin_flag) << m.kind();
        }
    }
}

TEST(Simulation, ClassicalVerdictsEqualFirstPassage) {
    const std::vector<PathOutcome> paths = simulate_paths(kExpModel, mechanism::Classical{}, 1.0, config(20000));
    for (const PathOutcome& p : paths) EXPECT_EQ(p.verdict == PathVerdict::Ruined, p.classical_ruin_flag);
}

TEST(Simulation, CertainRescueNeverRuins) {
    const Estimate e = estimate_ruin(kExpModel, mechanism::Investor{ConstantRescue{1.0}}, 0.0, config(20000));
    EXPECT_EQ(e.p_hat, 0.0);
}

TEST(Simulation, ConstantRescueMatchesRenewalFormula) {
    const Estimate e = estimate_ruin(kExpModel, mechanism::Investor{ConstantRescue{0.5}}, 2.0, config(200000));
    EXPECT_NEAR(e.p_hat, 0.1226264804, 3.0 * e.std_error + e.truncation_bias_bound);
}

TEST(Simulation, RaisingTheBarrierMovesLittle) {
    SimConfig low = config(100000);
    low.barrier = AutoBarrier{1e-2};
    SimConfig high = config(100000);
    high.barrier = AutoBarrier{1e-6};
    const Mechanism m = mechanism::ParisianFixed{0.5};
    const Estimate a = estimate_ruin(kExpModel, m, 1.0, low);
    const Estimate b = estimate_ruin(kExpModel, m, 1.0, high);
    EXPECT_LE(std::abs(a.p_hat - b.p_hat), a.truncation_bias_bound + 3.0 * std::hypot(a.std_error, b.std_error));
}

TEST(Simulation, RatioForClassicalIsOne) {
    const RatioEstimate r = estimate_ratio_crn(kExpModel, mechanism::Classical{}, 1.0, config(20000));
    EXPECT_DOUBLE_EQ(r.ratio, 1.0);
}

TEST(Deficit, EmptyRequest) {
    EXPECT_TRUE(estimate_deficit_distribution(kExpModel, 0.0, 0, config(10)).empty());
}

TEST(Deficit, AtZeroFollowsIntegratedTail) {
    const EmpiricalDistribution d = estimate_deficit_distribution(kExpModel, 0.0, 20000, config(1000000));
    ASSERT_EQ(d.size(), 20000u);
    const double ks = d.ks_distance([](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); });
    EXPECT_LT(ks, 1.36 / std::sqrt(20000.0));
}

TEST(Deficit, BudgetExhaustionKeepsPartialSample) {
    try {
        estimate_deficit_distribution(kExpModel, 5.0, 100000, config(1000));
        FAIL() << "expected SampleBudgetExceeded";
    } catch (const SampleBudgetExceeded& e) {
        EXPECT_EQ(e.paths_used(), 1000u);
        EXPECT_LT(e.partial().size(), 100000u);
    }
}

TEST(Empirical, CdfTailAndKs) {
    const EmpiricalDistribution d({3.0, 1.0, 2.0, 4.0});
    EXPECT_DOUBLE_EQ(d.cdf(2.0), 0.5);
    EXPECT_DOUBLE_EQ(d.tail(2.5), 0.5);
    EXPECT_DOUBLE_EQ(d.samples()[0], 1.0);
    // Uniform(0, 4): the worst gap sits just below each sample point.
    EXPECT_NEAR(d.ks_distance([](double x) { return std::clamp(x / 4.0, 0.0, 1.0); }), 0.25, 1e-15);
}

TEST(Workers, EnvironmentCapsWorkers) {
    ::setenv("RUINKIT_THREADS", "2", 1);
    SimConfig cfg;
    cfg.workers = 8;
    EXPECT_EQ(effective_workers(cfg), 2u);
    ::unsetenv("RUINKIT_THREADS");
    EXPECT_EQ(effective_workers(cfg), 8u);
}

}  // namespace
}  // namespace ruinkit
