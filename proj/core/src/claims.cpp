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

#include "ruinkit/claims.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "ruinkit/error.hpp"
#include "overloaded.hpp"

namespace ruinkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using detail::overloaded;

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

ClaimDistribution::ClaimDistribution(Law law) : law_(law) {
    std::visit(overloaded{
                   [](const Exponential& d) {
                       if (!positive_finite(d.rate)) throw InvalidArgument("exponential: rate must be > 0");
                   },
                   [](const Pareto& d) {
                       if (!(d.shape > 1.0) || !std::isfinite(d.shape))
                           throw InvalidArgument("pareto: shape must be > 1 for a finite mean");
                       if (!positive_finite(d.scale)) throw InvalidArgument("pareto: scale must be > 0");
                   },
                   [](const Gamma& d) {
                       if (!positive_finite(d.shape)) throw InvalidArgument("gamma: shape must be > 0");
                       if (!positive_finite(d.rate)) throw InvalidArgument("gamma: rate must be > 0");
                   },
               },
               law_);
}

std::string ClaimDistribution::family() const {
    return std::visit(overloaded{
                          [](const Exponential&) { return std::string("exponential"); },
                          [](const Pareto&) { return std::string("pareto"); },
                          [](const Gamma&) { return std::string("gamma"); },
                      },
                      law_);
}

double mean(const ClaimDistribution& dist) {
    return std::visit(overloaded{
                          [](const Exponential& d) { return 1.0 / d.rate; },
                          [](const Pareto& d) { return d.scale / (d.shape - 1.0); },
                          [](const Gamma& d) { return d.shape / d.rate; },
                      },
                      dist.law());
}

double tail(const ClaimDistribution& dist, double t) {
    if (t <= 0.0) return 1.0;
    return std::visit(overloaded{
                          [t](const Exponential& d) { return std::exp(-d.rate * t); },
                          [t](const Pareto& d) { return std::pow(1.0 + t / d.scale, -d.shape); },
                          [t](const Gamma& d) { return boost::math::gamma_q(d.shape, d.rate * t); },
                      },
                      dist.law());
}

double density(const ClaimDistribution& dist, double t) {
    if (t < 0.0) return 0.0;
    return std::visit(overloaded{
                          [t](const Exponential& d) { return d.rate * std::exp(-d.rate * t); },
                          [t](const Pareto& d) {
                              return d.shape / d.scale * std::pow(1.0 + t / d.scale, -d.shape - 1.0);
                          },
                          [t](const Gamma& d) {
                              if (t == 0.0) {
                                  if (d.shape < 1.0) return kInf;
                                  return d.shape == 1.0 ? d.rate : 0.0;
                              }
                              return d.rate * boost::math::gamma_p_derivative(d.shape, d.rate * t);
                          },
                      },
                      dist.law());
}

double integrated_tail_complement(const ClaimDistribution& dist, double u) {
    if (u <= 0.0) return 1.0;
    const double value = std::visit(
        overloaded{
            [u](const Exponential& d) { return std::exp(-d.rate * u); },
            [u](const Pareto& d) { return std::pow(1.0 + u / d.scale, -(d.shape - 1.0)); },
            [u](const Gamma& d) {
                // E[(Y - u)^+] / E[Y] in terms of regularized upper incomplete gammas.
                const double x = d.rate * u;
                return boost::math::gamma_q(d.shape + 1.0, x) - x / d.shape * boost::math::gamma_q(d.shape, x);
            },
        },
        dist.law());
    return std::clamp(value, 0.0, 1.0);
}

double integrated_tail_quantile(const ClaimDistribution& dist, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("integrated_tail_quantile: eps must lie in (0, 1)");
    return std::visit(overloaded{
                          [eps](const Exponential& d) { return -std::log(eps) / d.rate; },
                          [eps](const Pareto& d) { return d.scale * (std::pow(eps, -1.0 / (d.shape - 1.0)) - 1.0); },
                          [&dist, eps](const Gamma&) {
                              double hi = mean(dist);
                              while (integrated_tail_complement(dist, hi) > eps) hi *= 2.0;
                              const auto gap = [&dist, eps](double u) { return integrated_tail_complement(dist, u) - eps; };
                              return find_root_bracketed(gap, 0.0, hi, {1e-12, 1e-12, 400}).hi;
                          },
                      },
                      dist.law());
}

double mgf_domain_bound(const ClaimDistribution& dist) {
    return std::visit(overloaded{
                          [](const Exponential& d) { return d.rate; },
                          [](const Pareto&) { return 0.0; },
                          [](const Gamma& d) { return d.rate; },
                      },
                      dist.law());
}

double mgf_minus_one(const ClaimDistribution& dist, double s) {
    if (s < 0.0) throw InvalidArgument("mgf_minus_one: s must be >= 0");
    if (s == 0.0) return 0.0;
    return std::visit(overloaded{
                          [s](const Exponential& d) { return s < d.rate ? s / (d.rate - s) : kInf; },
                          [](const Pareto&) { return kInf; },
                          [s](const Gamma& d) {
                              return s < d.rate ? std::expm1(-d.shape * std::log1p(-s / d.rate)) : kInf;
                          },
                      },
                      dist.law());
}

double mgf_derivative(const ClaimDistribution& dist, double s) {
    if (s < 0.0) throw InvalidArgument("mgf_derivative: s must be >= 0");
    if (s == 0.0) return mean(dist);
    return std::visit(overloaded{
                          [s](const Exponential& d) {
                              const double gap = d.rate - s;
                              return s < d.rate ? d.rate / (gap * gap) : kInf;
                          },
                          [](const Pareto&) { return kInf; },
                          [s](const Gamma& d) {
                              if (!(s < d.rate)) return kInf;
                              const double gap = d.rate - s;
                              return d.shape / gap * std::pow(d.rate / gap, d.shape);
                          },
                      },
                      dist.law());
}

double sample_claim(const ClaimDistribution& dist, RandomStream& rng) {
    return std::visit(overloaded{
                          [&rng](const Exponential& d) { return rng.exponential(d.rate); },
                          [&rng](const Pareto& d) {
                              return d.scale * std::expm1(-std::log(rng.uniform()) / d.shape);
                          },
                          [&rng](const Gamma& d) { return rng.standard_gamma(d.shape) / d.rate; },
                      },
                      dist.law());
}

ModelParams::ModelParams(double c, double lambda, ClaimDistribution claims)
    : c_(c), lambda_(lambda), claims_(std::move(claims)) {
    if (!positive_finite(c_)) throw InvalidArgument("model: premium rate c must be > 0");
    if (!positive_finite(lambda_)) throw InvalidArgument("model: claim intensity lambda must be > 0");
    if (!(c_ > lambda_ * mean(claims_))) throw NetProfitViolated();
}

double ModelParams::drift() const { return c_ - lambda_ * mean(claims_); }

double ModelParams::load_ratio() const { return lambda_ * mean(claims_) / c_; }

RegimeTag classify_regime(const ModelParams& model, const Tolerance& tol) {
    const ClaimDistribution& claims = model.claims();
    if (claims.is<Pareto>()) return SubexponentialHeavy{};

    const double bound = mgf_domain_bound(claims);
    if (!(bound > 0.0)) return Neither{"claim law has no exponential moments"};

    const double lambda = model.lambda();
    const double c = model.c();
    const auto cramer_gap = [&](double s) { return lambda * mgf_minus_one(claims, s) - c * s; };

    constexpr double kEdge = 1e-12;
    try {
        const RootBracket root = find_root_bracketed(cramer_gap, kEdge * bound, (1.0 - kEdge) * bound, tol);
        const double R = root.root;
        const double residual = cramer_gap(R);
        if (!std::isfinite(residual) || std::abs(residual) > 1e-9 * std::max(1.0, c * R)) {
            return Neither{"Cramer residual " + std::to_string(residual) + " at R = " + std::to_string(R)};
        }
        return CramerLight{R};
    } catch (const Error& e) {
        return Neither{std::string("adjustment coefficient solve failed: ") + e.what()};
    }
}

std::string regime_name(const RegimeTag& regime) {
    return std::visit(overloaded{
                          [](const CramerLight&) { return std::string("cramer"); },
                          [](const SubexponentialHeavy&) { return std::string("heavy"); },
                          [](const Neither&) { return std::string("neither"); },
                      },
                      regime);
}

}  // namespace ruinkit
