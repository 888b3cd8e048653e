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

#include "ruinkit/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "overloaded.hpp"
#include "ruinkit/error.hpp"

namespace ruinkit {

using detail::overloaded;

std::string psi_method_name(PsiMethod method) {
    switch (method) {
        case PsiMethod::Exact: return "exact";
        case PsiMethod::CramerAsymptotic: return "cramer_asymptotic";
        case PsiMethod::HeavyAsymptotic: return "heavy_asymptotic";
    }
    return "unknown";
}

double cramer_prefactor(const ModelParams& model, double R) {
    return model.drift() / (model.lambda() * mgf_derivative(model.claims(), R) - model.c());
}

PsiValue psi_classical(const ModelParams& model, double u, const Tolerance& tol) {
    if (!(u >= 0.0)) throw InvalidArgument("psi_classical: u must be >= 0");
    const ClaimDistribution& claims = model.claims();
    if (u == 0.0) return {model.load_ratio(), PsiMethod::Exact};
    if (claims.is<Exponential>()) {
        const double delta = claims.as<Exponential>().rate;
        const double decay = delta - model.lambda() / model.c();
        return {model.lambda() / (model.c() * delta) * std::exp(-decay * u), PsiMethod::Exact};
    }
    const RegimeTag regime = classify_regime(model, tol);
    if (const auto* cramer = std::get_if<CramerLight>(&regime)) {
        return {cramer_prefactor(model, cramer->R) * std::exp(-cramer->R * u), PsiMethod::CramerAsymptotic};
    }
    if (std::holds_alternative<SubexponentialHeavy>(regime)) {
        const double mu = mean(claims);
        return {model.lambda() * mu / model.drift() * integrated_tail_complement(claims, u),
                PsiMethod::HeavyAsymptotic};
    }
    throw RegimeUnavailable("psi_classical: " + std::get<Neither>(regime).diagnostic);
}

double limit_overshoot_tail(const GammaKind& gamma, const ModelParams& model, double x, const Tolerance& tol) {
    if (!(x >= 0.0)) throw InvalidArgument("limit_overshoot_tail: x must be >= 0");
    const ClaimDistribution& claims = model.claims();
    const double lambda = model.lambda();
    const double c = model.c();
    const double beyond = mean(claims) * integrated_tail_complement(claims, x);

    const double numerator = std::visit(
        overloaded{
            [&](const CramerDecay& g) {
                if (!(g.R > 0.0)) throw InvalidArgument("limit_overshoot_tail: R must be > 0");
                const auto weighted = [&](double z) { return std::exp(-g.R * (x - z)) * tail(claims, z); };
                return c * std::exp(-g.R * x) - lambda * integrate_finite(weighted, 0.0, x, tol) - lambda * beyond;
            },
            [&](const HeavyTailDecay&) {
                const auto plain = [&](double z) { return tail(claims, z); };
                return c - lambda * integrate_finite(plain, 0.0, x, tol) - lambda * beyond;
            },
        },
        gamma);
    return numerator / model.drift();
}

namespace {

// (e^{Rz} - 1) * g with g >= 0 small where e^{Rz} is large.
double grow_times(double R, double z, double g) {
    if (!(g > 0.0)) return 0.0;
    const double rz = R * z;
    if (rz < 700.0) return std::expm1(rz) * g;
    return std::exp(rz + std::log(g)) - g;
}

void require_cramer(double R) {
    if (!(R > 0.0) || !std::isfinite(R)) throw InvalidArgument("Cramer regime requires R > 0");
}

// Integral of p(-x) * weight(x) over x in [0, inf), split at the kinks of p.
double integrate_rescue_against(const RescueFunction& p, const ScalarFunction& weight, const Tolerance& tol) {
    const auto integrand = [&](double x) {
        const double depth = std::max(x, std::numeric_limits<double>::min());
        return rescue_probability(p, -depth) * weight(x);
    };
    std::vector<double> cuts;
    for (double y : p.kinks()) cuts.push_back(-y);
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    double left = 0.0;
    for (double cut : cuts) {
        total += integrate_finite(integrand, left, cut, tol);
        left = cut;
    }
    return total + integrate_semi_infinite(integrand, left, tol);
}

}  // namespace

double p_infinity_df(const ModelParams& model, double R, double x, const Tolerance& tol) {
    require_cramer(R);
    if (!(x >= 0.0)) throw InvalidArgument("p_infinity_df: x must be >= 0");
    const ClaimDistribution& claims = model.claims();
    const auto integrand = [&](double z) { return grow_times(R, z, tail(claims, z + x)); };
    const double mass = model.lambda() / model.drift() * integrate_semi_infinite(integrand, 0.0, tol);
    return std::clamp(1.0 - mass, 0.0, 1.0);
}

double p_infinity_density(const ModelParams& model, double R, double x, const Tolerance& tol) {
    require_cramer(R);
    if (!(x >= 0.0)) throw InvalidArgument("p_infinity_density: x must be >= 0");
    const ClaimDistribution& claims = model.claims();
    const auto integrand = [&](double z) { return grow_times(R, z, density(claims, z + x)); };
    return model.lambda() / model.drift() * integrate_semi_infinite(integrand, 0.0, tol);
}

double p0_renewal(const RescueFunction& p, const ModelParams& model, const Tolerance& tol) {
    if (const auto* constant = std::get_if<ConstantRescue>(&p.shape())) return constant->p * model.load_ratio();
    const ClaimDistribution& claims = model.claims();
    const auto claim_tail = [&claims](double x) { return tail(claims, x); };
    // psi_cl(0) * dF_I(x) = (lambda mu / c) * Fbar(x) / mu dx
    return model.lambda() / model.c() * integrate_rescue_against(p, claim_tail, tol);
}

double q0_renewal(double p0, const ModelParams& model) {
    if (!(p0 < 1.0)) throw DegenerateP0();
    if (!(p0 >= 0.0)) throw InvalidArgument("q0_renewal: p0 must be >= 0");
    return (1.0 - model.load_ratio()) / (1.0 - p0);
}

double psi_modified_exact_exponential(const RescueFunction& p, const ModelParams& model, double u,
                                      const Tolerance& tol) {
    if (!model.claims().is<Exponential>()) {
        throw InvalidArgument("psi_modified_exact_exponential: requires exponential claims");
    }
    const double delta = model.claims().as<Exponential>().rate;
    const double p0 = p0_renewal(p, model, tol);
    if (!(p0 < 1.0)) throw DegenerateP0();
    const double factor = (1.0 - model.c() * delta * p0 / model.lambda()) / (1.0 - p0);
    return psi_classical(model, u, tol).value * factor;
}

double cramer_constant_renewal(const RescueFunction& p, const ModelParams& model, double R, const Tolerance& tol) {
    require_cramer(R);
    const double q0 = q0_renewal(p0_renewal(p, model, tol), model);
    double rescued;
    if (const auto* constant = std::get_if<ConstantRescue>(&p.shape())) {
        rescued = constant->p;  // P_inf is a probability measure
    } else {
        const auto limit_density = [&](double x) { return p_infinity_density(model, R, x, tol); };
        rescued = integrate_rescue_against(p, limit_density, tol);
    }
    return 1.0 - q0 * rescued;
}

double cramer_constant_general(const ScalarFunction& psi_neg, const ModelParams& model, double R,
                               const Tolerance& tol) {
    require_cramer(R);
    const auto integrand = [&](double x) {
        const double depth = std::max(x, std::numeric_limits<double>::min());
        return psi_neg(-depth) * p_infinity_density(model, R, x, tol);
    };
    return integrate_semi_infinite(integrand, 0.0, tol);
}

AsymptoticReport asymptotic_report(const ModelParams& model, const Mechanism& mech, const Tolerance& tol) {
    AsymptoticReport report;
    report.regime = classify_regime(model, tol);
    const auto* cramer = std::get_if<CramerLight>(&report.regime);
    if (cramer) {
        report.R = cramer->R;
        report.k = cramer_prefactor(model, cramer->R);
    } else if (const auto* neither = std::get_if<Neither>(&report.regime)) {
        report.notes.push_back("no asymptotic regime: " + neither->diagnostic);
    }

    if (mech.is<mechanism::Classical>()) {
        report.p0 = 0.0;
        report.q0 = 1.0 - model.load_ratio();
        if (cramer) report.C = 1.0;
    } else if (mech.is<mechanism::Investor>()) {
        const RescueFunction& p = mech.as<mechanism::Investor>().p;
        report.p0 = p0_renewal(p, model, tol);
        try {
            report.q0 = q0_renewal(*report.p0, model);
            if (cramer) report.C = cramer_constant_renewal(p, model, cramer->R, tol);
        } catch (const DegenerateP0& e) {
            report.notes.push_back(e.what());
        }
    } else if (mech.is_cumulative()) {
        report.notes.push_back("psi(y) for y < 0 depends on the remaining time budget; C is estimated by Monte Carlo only");
    } else {
        report.notes.push_back("psi(y) for y < 0 has no closed form for '" + mech.kind() +
                               "'; C is estimated by Monte Carlo only");
    }

    if (cramer && report.C) {
        report.notes.push_back("C assumes psi is continuous or monotone on (-inf, 0); not verified");
    }
    if (std::holds_alternative<SubexponentialHeavy>(report.regime) && !mech.is<mechanism::Classical>()) {
        report.notes.push_back("heavy-tailed regime: psi(u) ~ psi_cl(u) whenever psi(y) -> 1 as y -> -inf");
    }
    return report;
}

std::optional<double> psi_modified_analytic(const ModelParams& model, const Mechanism& mech,
                                            const AsymptoticReport& report, double u, const Tolerance& tol) {
    try {
        if (mech.is<mechanism::Classical>()) return psi_classical(model, u, tol).value;
        if (mech.is<mechanism::Investor>()) {
            const RescueFunction& p = mech.as<mechanism::Investor>().p;
            if (model.claims().is<Exponential>()) return psi_modified_exact_exponential(p, model, u, tol);
            if (u == 0.0 && report.q0) return 1.0 - *report.q0;
        }
    } catch (const RegimeUnavailable&) {
    } catch (const DegenerateP0&) {
    }
    return std::nullopt;
}

std::string report_to_json(const AsymptoticReport& report, const ModelParams& model, const Mechanism& mech,
                           std::span<const double> u_grid, const Tolerance& tol) {
    using nlohmann::json;
    const auto optional_number = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };

    json doc;
    doc["regime"] = regime_name(report.regime);
    doc["mechanism"] = mech.kind();
    doc["R"] = optional_number(report.R);
    doc["k"] = optional_number(report.k);
    doc["C"] = optional_number(report.C);
    doc["p0"] = optional_number(report.p0);
    doc["q0"] = optional_number(report.q0);
    doc["notes"] = report.notes;

    json table = json::array();
    for (double u : u_grid) {
        json row;
        row["u"] = u;
        try {
            const PsiValue cl = psi_classical(model, u, tol);
            row["psi_cl"] = cl.value;
            row["psi_cl_method"] = psi_method_name(cl.method);
        } catch (const RegimeUnavailable&) {
            row["psi_cl"] = nullptr;
            row["psi_cl_method"] = nullptr;
        }
        row["psi_modified"] = optional_number(psi_modified_analytic(model, mech, report, u, tol));
        table.push_back(std::move(row));
    }
    doc["table"] = std::move(table);
    return doc.dump(2) + "\n";
}

}  // namespace ruinkit
