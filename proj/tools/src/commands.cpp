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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <variant>

#include <fmt/format.h>

#include "json.hpp"
#include "ruinkit/analytic.hpp"
#include "ruinkit/error.hpp"
#include "ruinkit/simulate.hpp"

namespace ruinkit::cli {

namespace {

constexpr const char* kNA = "NA";

std::string cell(double v) { return std::isfinite(v) ? fmt::format("{}", v) : kNA; }
std::string cell(const std::optional<double>& v) { return v ? cell(*v) : kNA; }

std::string csv_row(std::initializer_list<std::string> cells) {
    std::string line;
    for (const std::string& c : cells) {
        if (!line.empty()) line += ',';
        line += c;
    }
    return line + '\n';
}

}  // namespace

CommandResult cmd_solve_r(const Scenario& s) {
    const RegimeTag regime = classify_regime(s.model);
    nlohmann::ordered_json doc;
    doc["regime"] = regime_name(regime);
    CommandResult result;
    if (const auto* cramer = std::get_if<CramerLight>(&regime)) {
        doc["R"] = cramer->R;
    } else if (const auto* neither = std::get_if<Neither>(&regime)) {
        doc["diagnostic"] = neither->diagnostic;
        result.exit_code = kRegimeUnavailable;
        result.error = "no asymptotic regime: " + neither->diagnostic;
    }
    result.output = doc.dump() + "\n";
    return result;
}

CommandResult cmd_asymptotics(const Scenario& s) {
    const AsymptoticReport report = asymptotic_report(s.model, s.mechanism);
    CommandResult result;
    result.output = csv_row({"u", "psi_cl_analytic", "psi_modified_analytic", "psi_mc", "psi_mc_ci_lo", "psi_mc_ci_hi",
                             "ratio_mc", "ratio_mc_ci_lo", "ratio_mc_ci_hi", "C_predicted"});
    for (double u : s.u_grid) {
        std::optional<double> psi_cl;
        try {
            psi_cl = psi_classical(s.model, u).value;
        } catch (const RegimeUnavailable&) {
        }
        const std::optional<double> psi_mod = psi_modified_analytic(s.model, s.mechanism, report, u);

        std::string mc[6] = {kNA, kNA, kNA, kNA, kNA, kNA};
        try {
            const PairedEstimate est = estimate_paired(s.model, s.mechanism, u, s.sim);
            mc[0] = cell(est.modified.p_hat);
            mc[1] = cell(est.modified.ci_lo);
            mc[2] = cell(est.modified.ci_hi);
            if (est.classical_ruins > 0) {
                const RatioEstimate r = ratio_estimate(est.modified_ruins, est.classical_ruins, est.modified.n);
                mc[3] = cell(r.ratio);
                mc[4] = cell(r.ci_lo);
                mc[5] = cell(r.ci_hi);
            }
        } catch (const RegimeUnavailable& e) {
            result.exit_code = kRegimeUnavailable;
            result.error = e.what();
        }
        result.output +=
            csv_row({cell(u), cell(psi_cl), cell(psi_mod), mc[0], mc[1], mc[2], mc[3], mc[4], mc[5], cell(report.C)});
    }
    return result;
}

CommandResult cmd_overshoot(const Scenario& s) {
    const double u = s.u_grid.back();
    const RegimeTag regime = classify_regime(s.model);
    std::optional<GammaKind> gamma;
    if (const auto* cramer = std::get_if<CramerLight>(&regime)) gamma = CramerDecay{cramer->R};
    if (std::holds_alternative<SubexponentialHeavy>(regime)) gamma = HeavyTailDecay{};

    CommandResult result;
    EmpiricalDistribution sample;
    try {
        sample = estimate_deficit_distribution(s.model, u, s.outputs.n_conditional, s.sim);
    } catch (const SampleBudgetExceeded& e) {
        sample = e.partial();
        result.exit_code = kSampleBudgetExceeded;
        result.error = fmt::format("{} (collected {} of {} deficits in {} paths)", e.what(), sample.size(),
                                   s.outputs.n_conditional, e.paths_used());
    }

    // The Cramer limit is a proper law, so a KS distance makes sense; under
    // heavy tails the deficit escapes to infinity and only the tail is shown.
    std::optional<double> ks;
    if (gamma && std::holds_alternative<CramerDecay>(*gamma) && !sample.empty()) {
        const double R = std::get<CramerDecay>(*gamma).R;
        ks = sample.ks_distance([&](double x) { return x <= 0.0 ? 0.0 : p_infinity_df(s.model, R, x); });
    }

    result.output = csv_row({"x", "empirical_tail_at_u", "p_infinity_tail", "ks_stat"});
    for (double x : s.outputs.x_grid) {
        const std::optional<double> empirical = sample.empty() ? std::nullopt : std::optional(sample.tail(x));
        const std::optional<double> limit =
            gamma ? std::optional(std::clamp(limit_overshoot_tail(*gamma, s.model, x), 0.0, 1.0)) : std::nullopt;
        result.output += csv_row({cell(x), cell(empirical), cell(limit), cell(ks)});
    }
    if (!gamma && result.exit_code == kOk) {
        result.exit_code = kRegimeUnavailable;
        result.error = "no limiting deficit law: " + std::get<Neither>(regime).diagnostic;
    }
    return result;
}

CommandResult cmd_simulate(const Scenario& s) {
    CommandResult result;
    result.output =
        csv_row({"u", "p_hat", "stderr", "ci_lo", "ci_hi", "n", "truncation_bias_bound", "budget_exceeded"});
    for (double u : s.u_grid) {
        const Estimate e = estimate_ruin(s.model, s.mechanism, u, s.sim);
        result.output += csv_row({cell(u), cell(e.p_hat), cell(e.std_error), cell(e.ci_lo), cell(e.ci_hi),
                                  fmt::format("{}", e.n), cell(e.truncation_bias_bound),
                                  fmt::format("{}", e.budget_exceeded)});
    }
    return result;
}

CommandResult cmd_constant(const Scenario& s) {
    const AsymptoticReport report = asymptotic_report(s.model, s.mechanism);
    return {kOk, report_to_json(report, s.model, s.mechanism, s.u_grid), {}};
}

CommandResult run_command(std::string_view command, std::string_view scenario_json, const Overrides& overrides) {
    try {
        Scenario s = parse_scenario(scenario_json);
        if (overrides.seed) s.sim.seed = *overrides.seed;
        if (overrides.paths) s.sim.n_paths = *overrides.paths;
        s.sim.validate();

        if (command == "solve-r") return cmd_solve_r(s);
        if (command == "asymptotics") return cmd_asymptotics(s);
        if (command == "overshoot") return cmd_overshoot(s);
        if (command == "simulate") return cmd_simulate(s);
        if (command == "constant") return cmd_constant(s);
        return {kConfigError, {}, fmt::format("unknown command '{}'", command)};
    } catch (const InvalidArgument& e) {
        return {kConfigError, {}, e.what()};
    } catch (const RegimeUnavailable& e) {
        return {kRegimeUnavailable, {}, e.what()};
    } catch (const std::exception& e) {
        return {kConfigError, {}, e.what()};
    }
}

}  // namespace ruinkit::cli
