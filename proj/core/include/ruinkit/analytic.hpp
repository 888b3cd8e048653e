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

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ruinkit/claims.hpp"
#include "ruinkit/mechanisms.hpp"
#include "ruinkit/numerics.hpp"

namespace ruinkit {

enum class PsiMethod {
    Exact,             ///< closed form (exponential claims)
    CramerAsymptotic,  ///< k * exp(-R u)
    HeavyAsymptotic,   ///< lambda / (c - lambda mu) * integral of the tail over [u, inf)
};

std::string psi_method_name(PsiMethod method);

struct PsiValue {
    double value;
    PsiMethod method;
};

/// Classical ruin probability P_u(T < inf).
///
/// Exact for exponential claims, the Cramer-Lundberg approximation for other
/// light tails and the subexponential approximation for Pareto claims.
/// Throws RegimeUnavailable when no regime applies.
PsiValue psi_classical(const ModelParams& model, double u, const Tolerance& tol = {});

/// Prefactor k of psi_cl(u) ~ k exp(-R u): (c - lambda mu) / (lambda E[Y e^{RY}] - c).
double cramer_prefactor(const ModelParams& model, double R);

/// Decay of psi_cl(u + z) / psi_cl(u) as u grows.
struct CramerDecay {
    double R;
};
struct HeavyTailDecay {};
using GammaKind = std::variant<CramerDecay, HeavyTailDecay>;

/// lim_u P_u(-U_T > x | T < inf), the limiting deficit tail, from
/// (c gamma(x) - lambda int_0^x gamma(x - z) Fbar(z) dz - lambda int_x^inf Fbar) / (c - lambda mu).
double limit_overshoot_tail(const GammaKind& gamma, const ModelParams& model, double x, const Tolerance& tol = {});

/// Distribution function of the limiting deficit law P_inf at x >= 0:
/// 1 - lambda / (c - lambda mu) * int_0^inf (e^{Rz} - 1) Fbar(z + x) dz.
double p_infinity_df(const ModelParams& model, double R, double x, const Tolerance& tol = {});

/// Density of P_inf: lambda / (c - lambda mu) * int_0^inf (e^{Rz} - 1) f(z + x) dz.
double p_infinity_density(const ModelParams& model, double R, double x, const Tolerance& tol = {});

/// p0 = P_0(recovery before ruin, T < inf) = psi_cl(0) * int_0^inf p(-x) dF_I(x).
double p0_renewal(const RescueFunction& p, const ModelParams& model, const Tolerance& tol = {});

/// q0 = 1 - psi(0) = (1 - psi_cl(0)) / (1 - p0). Throws DegenerateP0 if p0 >= 1.
double q0_renewal(double p0, const ModelParams& model);

/// Exact modified ruin probability for exponential claims under a rescue
/// function: psi_cl(u) * (1 - c delta p0 / lambda) / (1 - p0).
double psi_modified_exact_exponential(const RescueFunction& p, const ModelParams& model, double u,
                                      const Tolerance& tol = {});

/// C = 1 - q0 * int p_y P_inf(dy) for renewal-type (rescue) models.
double cramer_constant_renewal(const RescueFunction& p, const ModelParams& model, double R,
                               const Tolerance& tol = {});

/// C = int psi(y) P_inf(dy) for a given psi on the negative half-line.
/// `psi_neg` is evaluated at y < 0. Continuity or monotonicity of psi_neg is
/// the caller's responsibility.
double cramer_constant_general(const ScalarFunction& psi_neg, const ModelParams& model, double R,
                               const Tolerance& tol = {});

/// Everything the closed-form side can say about a (model, mechanism) pair.
struct AsymptoticReport {
    RegimeTag regime;
    std::optional<double> R;
    std::optional<double> k;
    std::optional<double> C;
    std::optional<double> p0;
    std::optional<double> q0;
    std::vector<std::string> notes;
};

AsymptoticReport asymptotic_report(const ModelParams& model, const Mechanism& mech, const Tolerance& tol = {});

/// Closed-form modified ruin probability where one is available: the
/// classical mechanism, rescue models with exponential claims, and rescue
/// models at u = 0 for any claim law.
std::optional<double> psi_modified_analytic(const ModelParams& model, const Mechanism& mech,
                                            const AsymptoticReport& report, double u, const Tolerance& tol = {});

/// JSON document with the report fields and one row of analytic values per u.
std::string report_to_json(const AsymptoticReport& report, const ModelParams& model, const Mechanism& mech,
                           std::span<const double> u_grid, const Tolerance& tol = {});

}  // namespace ruinkit
