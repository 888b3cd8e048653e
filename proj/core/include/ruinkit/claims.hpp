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

#include <string>
#include <type_traits>
#include <utility>
#include <variant>

#include "ruinkit/numerics.hpp"
#include "ruinkit/random.hpp"

namespace ruinkit {

struct Exponential {
    double rate;
    bool operator==(const Exponential&) const = default;
};

/// Lomax (Pareto type II) law: tail (1 + t / scale)^(-shape), support [0, inf).
struct Pareto {
    double shape;
    double scale;
    bool operator==(const Pareto&) const = default;
};

struct Gamma {
    double shape;
    double rate;
    bool operator==(const Gamma&) const = default;
};

/// Claim-size law. Parameters are validated on construction; Pareto needs
/// shape > 1 so the mean is finite.
class ClaimDistribution {
public:
    using Law = std::variant<Exponential, Pareto, Gamma>;

    ClaimDistribution(Law law);  // NOLINT(google-explicit-constructor)
    template <class T>
        requires(std::is_constructible_v<Law, T &&> && !std::is_same_v<std::remove_cvref_t<T>, Law> &&
                 !std::is_same_v<std::remove_cvref_t<T>, ClaimDistribution>)
    ClaimDistribution(T&& alternative)  // NOLINT(google-explicit-constructor)
        : ClaimDistribution(Law(std::forward<T>(alternative))) {}

    const Law& law() const { return law_; }
    std::string family() const;

    template <class T>
    bool is() const {
        return std::holds_alternative<T>(law_);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(law_);
    }

    bool operator==(const ClaimDistribution&) const = default;

private:
    Law law_;
};

double mean(const ClaimDistribution& dist);

/// Survival function 1 - F(t).
double tail(const ClaimDistribution& dist, double t);

/// Claim density f(t) for t >= 0.
double density(const ClaimDistribution& dist, double t);

/// 1 - F_I(u) = (1/mu) * integral of the tail over [u, inf).
double integrated_tail_complement(const ClaimDistribution& dist, double u);

/// Smallest u with 1 - F_I(u) <= eps, for eps in (0, 1).
double integrated_tail_quantile(const ClaimDistribution& dist, double eps);

/// Right end of the moment generating function's domain: E[exp(sY)] < inf
/// iff s < bound. Zero for Pareto.
double mgf_domain_bound(const ClaimDistribution& dist);

/// E[exp(sY)] - 1, or +infinity outside the MGF domain.
double mgf_minus_one(const ClaimDistribution& dist, double s);

/// E[Y exp(sY)], the MGF derivative; +infinity outside the domain.
double mgf_derivative(const ClaimDistribution& dist, double s);

double sample_claim(const ClaimDistribution& dist, RandomStream& rng);

/// Premium rate, claim intensity and claim law of a Cramer-Lundberg model.
/// The constructor rejects c <= lambda * mu.
class ModelParams {
public:
    ModelParams(double c, double lambda, ClaimDistribution claims);

    double c() const { return c_; }
    double lambda() const { return lambda_; }
    const ClaimDistribution& claims() const { return claims_; }

    /// c - lambda * mu, positive by construction.
    double drift() const;

    /// lambda * mu / c, which is also the classical ruin probability at u = 0.
    double load_ratio() const;

    bool operator==(const ModelParams&) const = default;

private:
    double c_;
    double lambda_;
    ClaimDistribution claims_;
};

struct CramerLight {
    double R;
    bool operator==(const CramerLight&) const = default;
};
struct SubexponentialHeavy {
    bool operator==(const SubexponentialHeavy&) const = default;
};
struct Neither {
    std::string diagnostic;
    bool operator==(const Neither&) const = default;
};

using RegimeTag = std::variant<CramerLight, SubexponentialHeavy, Neither>;

/// Pareto claims are classified heavy by family. For light-tailed families
/// the adjustment coefficient is solved from lambda * (E[exp(RY)] - 1) = c R.
/// A failing root solve is reported as Neither with the reason.
RegimeTag classify_regime(const ModelParams& model, const Tolerance& tol = {});

std::string regime_name(const RegimeTag& regime);

}  // namespace ruinkit
