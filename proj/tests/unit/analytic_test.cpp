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

#include <gtest/gtest.h>

#include "ruinkit/analytic.hpp"
#include "ruinkit/error.hpp"

namespace ruinkit {
namespace {

const ModelParams kExpModel(2.0, 1.0, Exponential{1.0});
const ModelParams kGammaModel(2.5, 1.0, Gamma{2.0, 1.5});
const ModelParams kParetoModel(2.0, 1.0, Pareto{2.5, 1.5});

double gamma_R() { return std::get<CramerLight>(classify_regime(kGammaModel)).R; }

TEST(PsiClassical, ExponentialValues) {
    EXPECT_NEAR(psi_classical(kExpModel, 0.0).value, 0.5, 1e-15);
    const PsiValue at2 = psi_classical(kExpModel, 2.0);
    EXPECT_NEAR(at2.value, 0.1839397206, 1e-10);
    EXPECT_EQ(at2.method, PsiMethod::Exact);
    EXPECT_LT(psi_classical(kExpModel, 200.0).value, 1e-40);
}

TEST(PsiClassical, MethodTags) {
    EXPECT_EQ(psi_classical(kGammaModel, 3.0).method, PsiMethod::CramerAsymptotic);
    EXPECT_EQ(psi_classical(kParetoModel, 3.0).method, PsiMethod::HeavyAsymptotic);
    EXPECT_EQ(psi_method_name(PsiMethod::HeavyAsymptotic), "heavy_asymptotic");
}

TEST(PsiClassical, CramerPrefactorReducesToExponentialClosedForm) {
    // For exponential claims k e^{-Ru} is exact with k = lambda / (c delta).
    EXPECT_NEAR(cramer_prefactor(kExpModel, 0.5), 0.5, 1e-14);
}

TEST(PsiClassical, HeavyTailFormula) {
    // lambda mu / (c - lambda mu) = 1 here, so the value is the integrated tail.
    EXPECT_NEAR(psi_classical(kParetoModel, 1.5).value, std::pow(2.0, -1.5), 1e-12);
    const ModelParams loaded(3.0, 1.0, Pareto{2.5, 1.5});
    EXPECT_NEAR(psi_classical(loaded, 1.5).value, 0.5 * std::pow(2.0, -1.5), 1e-12);
}

TEST(LimitOvershoot, HeavyTailIsOne) {
    for (double x : {0.0, 0.5, 3.0, 40.0}) {
        EXPECT_NEAR(limit_overshoot_tail(HeavyTailDecay{}, kParetoModel, x), 1.0, 1e-8);
        EXPECT_NEAR(limit_overshoot_tail(HeavyTailDecay{}, kGammaModel, x), 1.0, 1e-8);
    }
}

TEST(LimitOvershoot, CramerValues) {
    EXPECT_NEAR(limit_overshoot_tail(CramerDecay{0.5}, kExpModel, 0.0), 1.0, 1e-10);
    EXPECT_NEAR(limit_overshoot_tail(CramerDecay{0.5}, kExpModel, 1.0), 0.3678794412, 1e-10);
}

TEST(PInfinity, ExponentialIsExponential) {
    EXPECT_LE(p_infinity_df(kExpModel, 0.5, 0.0), 1e-8);
    EXPECT_NEAR(p_infinity_df(kExpModel, 0.5, 1.0), 0.6321205588, 1e-8);
    EXPECT_NEAR(p_infinity_df(kExpModel, 0.5, 50.0), 1.0, 1e-8);
    for (double x : {0.1, 0.7, 2.0, 5.0}) EXPECT_NEAR(p_infinity_density(kExpModel, 0.5, x), std::exp(-x), 1e-8);
}

TEST(PInfinity, ProperDistributionForGamma) {
    const double R = gamma_R();
    EXPECT_LE(p_infinity_df(kGammaModel, R, 0.0), 1e-8);
    double prev = 0.0;
    for (double x = 0.0; x <= 30.0; x += 0.5) {
        const double F = p_infinity_df(kGammaModel, R, x);
        EXPECT_GE(F, prev - 1e-12);
        EXPECT_NEAR(1.0 - F, limit_overshoot_tail(CramerDecay{R}, kGammaModel, x), 1e-8) << "x=" << x;
        prev = F;
    }
    EXPECT_NEAR(prev, 1.0, 1e-8);
}

TEST(PInfinity, RequiresPositiveR) { EXPECT_THROW(p_infinity_df(kExpModel, 0.0, 1.0), InvalidArgument); }

TEST(Renewal, P0) {
    EXPECT_NEAR(p0_renewal(ConstantRescue{0.3}, kExpModel), 0.3 * 0.5, 1e-15);
    EXPECT_EQ(p0_renewal(ConstantRescue{0.0}, kExpModel), 0.0);
    EXPECT_NEAR(p0_renewal(ExponentialDecayRescue{1.0}, kExpModel), 0.25, 1e-10);
}

TEST(Renewal, Q0) {
    EXPECT_NEAR(q0_renewal(0.0, kExpModel), 0.5, 1e-15);
    EXPECT_NEAR(q0_renewal(0.25, kExpModel), 0.6666666667, 1e-10);
    EXPECT_NEAR(q0_renewal(0.5 * 0.5, kExpModel), 0.5 / 0.75, 1e-12);
    EXPECT_THROW(q0_renewal(1.0, kExpModel), DegenerateP0);
}

TEST(Renewal, ExactExponentialFormula) {
    for (double u : {0.0, 1.0, 2.0, 5.0}) {
        const double cl = psi_classical(kExpModel, u).value;
        EXPECT_NEAR(psi_modified_exact_exponential(ExponentialDecayRescue{1.0}, kExpModel, u), cl * 2.0 / 3.0, 1e-10);
        EXPECT_NEAR(psi_modified_exact_exponential(ConstantRescue{0.5}, kExpModel, u), cl * 2.0 / 3.0, 1e-12);
        EXPECT_NEAR(psi_modified_exact_exponential(ConstantRescue{0.0}, kExpModel, u), cl, 1e-15);
    }
    EXPECT_THROW(psi_modified_exact_exponential(ConstantRescue{0.5}, kGammaModel, 1.0), InvalidArgument);
}

TEST(Renewal, FixedPointAtZero) {
    const RescueFunction p = ExponentialDecayRescue{1.0};
    const double psi0 = psi_modified_exact_exponential(p, kExpModel, 0.0);
    EXPECT_NEAR(1.0 - psi0, q0_renewal(p0_renewal(p, kExpModel), kExpModel), 1e-10);
}

TEST(CramerConstant, RenewalValues) {
    EXPECT_NEAR(cramer_constant_renewal(ExponentialDecayRescue{1.0}, kExpModel, 0.5), 2.0 / 3.0, 1e-8);
    EXPECT_NEAR(cramer_constant_renewal(ConstantRescue{0.0}, kExpModel, 0.5), 1.0, 1e-14);
    EXPECT_NEAR(cramer_constant_renewal(ConstantRescue{1.0}, kExpModel, 0.5), 0.0, 1e-14);
}

TEST(CramerConstant, RatioIsConstantAndEqualsC) {
    const RescueFunction p = ExponentialDecayRescue{1.0};
    const double C = cramer_constant_renewal(p, kExpModel, 0.5);
    for (double u : {0.0, 0.5, 3.0, 10.0}) {
        const double ratio = psi_modified_exact_exponential(p, kExpModel, u) / psi_classical(kExpModel, u).value;
        EXPECT_NEAR(ratio, C, 1e-8);
    }
}

TEST(CramerConstant, GeneralFormula) {
    EXPECT_NEAR(cramer_constant_general([](double) { return 1.0; }, kExpModel, 0.5), 1.0, 1e-8);
    EXPECT_NEAR(cramer_constant_general([](double) { return 0.0; }, kExpModel, 0.5), 0.0, 1e-14);
    const double kappa = 1.0;
    const double psi0 = psi_modified_exact_exponential(ExponentialDecayRescue{kappa}, kExpModel, 0.0);
    const auto psi_neg = [&](double y) { return 1.0 - std::exp(kappa * y) * (1.0 - psi0); };
    EXPECT_NEAR(cramer_constant_general(psi_neg, kExpModel, 0.5),
                cramer_constant_renewal(ExponentialDecayRescue{kappa}, kExpModel, 0.5), 1e-8);
}

TEST(CramerConstant, StrongerRescueGivesSmallerConstant) {
    const double R = gamma_R();
    double prev = 1.0 + 1e-12;
    for (double kappa : {4.0, 2.0, 1.0, 0.5, 0.1}) {
        const double C = cramer_constant_renewal(ExponentialDecayRescue{kappa}, kGammaModel, R);
        EXPECT_LE(C, prev);
        prev = C;
    }
    const double table = cramer_constant_renewal(TableRescue{{{-3.0, 0.1}, {-0.5, 0.9}}}, kGammaModel, R);
    EXPECT_GT(table, 0.0);
    EXPECT_LT(table, 1.0);
}

TEST(Report, InvestorExponential) {
    const AsymptoticReport r = asymptotic_report(kExpModel, mechanism::Investor{ExponentialDecayRescue{1.0}});
    ASSERT_TRUE(r.C && r.p0 && r.q0 && r.R);
    EXPECT_NEAR(*r.R, 0.5, 1e-10);
    EXPECT_NEAR(*r.p0, 0.25, 1e-10);
    EXPECT_NEAR(*r.q0, 2.0 / 3.0, 1e-10);
    EXPECT_NEAR(*r.C, 2.0 / 3.0, 1e-8);
}

TEST(Report, ClassicalAndCumulative) {
    const AsymptoticReport classical = asymptotic_report(kExpModel, mechanism::Classical{});
    EXPECT_EQ(classical.C, 1.0);
    const AsymptoticReport cumulative = asymptotic_report(kParetoModel, mechanism::CumulativeParisianFixed{1.0});
    EXPECT_FALSE(cumulative.C.has_value());
    EXPECT_FALSE(cumulative.notes.empty());
}

TEST(Report, JsonHasTableRows) {
    const Mechanism m = mechanism::Investor{ConstantRescue{0.5}};
    const std::vector<double> grid{0.0, 2.0};
    const std::string json = report_to_json(asymptotic_report(kExpModel, m), kExpModel, m, grid);
    EXPECT_NE(json.find("\"regime\": \"cramer\""), std::string::npos);
    EXPECT_NE(json.find("\"psi_cl_method\": \"exact\""), std::string::npos);
}

}  // namespace
}  // namespace ruinkit
