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

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "ruinkit/claims.hpp"
#include "ruinkit/random.hpp"

namespace ruinkit {

// ---------------------------------------------------------------------------
// Bankruptcy rate functions (omega model)
// ---------------------------------------------------------------------------

struct ConstantRate {
    double level;
    bool operator==(const ConstantRate&) const = default;
};

/// Piecewise-constant rate below zero.
///
/// `breakpoints` are strictly descending negative surplus levels
/// b_1 > b_2 > ... > b_m. `levels` has m + 1 entries: levels[0] applies on
/// [b_1, 0), levels[i] on [b_{i+1}, b_i), and levels[m] on (-inf, b_m).
struct StepRate {
    std::vector<double> breakpoints;
    std::vector<double> levels;
    bool operator==(const StepRate&) const = default;
};

/// Non-negative bankruptcy rate, zero on [0, inf) and non-increasing in the
/// surplus (so non-decreasing in the depth of the deficit).
class RateFunction {
public:
    using Shape = std::variant<ConstantRate, StepRate>;

    RateFunction(Shape shape);  // NOLINT(google-explicit-constructor)
    template <class T>
        requires(std::is_constructible_v<Shape, T &&> && !std::is_same_v<std::remove_cvref_t<T>, Shape> &&
                 !std::is_same_v<std::remove_cvref_t<T>, RateFunction>)
    RateFunction(T&& alternative)  // NOLINT(google-explicit-constructor)
        : RateFunction(Shape(std::forward<T>(alternative))) {}

    const Shape& shape() const { return shape_; }
    double operator()(double surplus) const;

    /// Rate breakpoints strictly inside (lo, hi).
    std::vector<double> breakpoints_between(double lo, double hi) const;

    bool operator==(const RateFunction&) const = default;

private:
    Shape shape_;
};

// ---------------------------------------------------------------------------
// Rescue probabilities (investor model)
// ---------------------------------------------------------------------------

struct ConstantRescue {
    double p;
    bool operator==(const ConstantRescue&) const = default;
};

/// p_y = exp(kappa * y) for y < 0.
struct ExponentialDecayRescue {
    double kappa;
    bool operator==(const ExponentialDecayRescue&) const = default;
};

/// Linear interpolation through (y, p) points sorted by y, flat outside the
/// table and clamped to [0, 1].
struct TableRescue {
    std::vector<std::pair<double, double>> points;
    bool operator==(const TableRescue&) const = default;
};

class RescueFunction {
public:
    using Shape = std::variant<ConstantRescue, ExponentialDecayRescue, TableRescue>;

    RescueFunction(Shape shape);  // NOLINT(google-explicit-constructor)
    template <class T>
        requires(std::is_constructible_v<Shape, T &&> && !std::is_same_v<std::remove_cvref_t<T>, Shape> &&
                 !std::is_same_v<std::remove_cvref_t<T>, RescueFunction>)
    RescueFunction(T&& alternative)  // NOLINT(google-explicit-constructor)
        : RescueFunction(Shape(std::forward<T>(alternative))) {}

    const Shape& shape() const { return shape_; }

    /// Interior kinks of the function on (-inf, 0), in increasing order.
    std::vector<double> kinks() const;

    bool operator==(const RescueFunction&) const = default;

private:
    Shape shape_;
};

/// Probability that an investor carries the surplus from y < 0 back to zero.
/// Throws InvalidArgument for y >= 0.
double rescue_probability(const RescueFunction& p, double y);

// ---------------------------------------------------------------------------
// Mechanisms
// ---------------------------------------------------------------------------

namespace mechanism {

/// Ruin at the first passage below zero.
struct Classical {
    bool operator==(const Classical&) const = default;
};
/// Ruin once a single excursion below zero lasts longer than r.
struct ParisianFixed {
    double r;
    bool operator==(const ParisianFixed&) const = default;
};
/// Parisian ruin with an independent Exp(rate) delay per excursion.
struct ParisianExponential {
    double rate;
    bool operator==(const ParisianExponential&) const = default;
};
/// Ruin once the total time spent below zero exceeds r.
struct CumulativeParisianFixed {
    double r;
    bool operator==(const CumulativeParisianFixed&) const = default;
};
/// Cumulative Parisian ruin with one Exp(rate) time budget per path.
struct CumulativeParisianExponential {
    double rate;
    bool operator==(const CumulativeParisianExponential&) const = default;
};
/// Bankruptcy at the first time the integrated rate exceeds an Exp(1) variable.
struct Omega {
    RateFunction omega;
    bool operator==(const Omega&) const = default;
};
/// Borrowing at debit rate beta below zero: U' = c + beta * U while U < 0.
struct DebitInterest {
    double beta;
    bool operator==(const DebitInterest&) const = default;
};
/// One rescue draw with probability p(entry level) per excursion.
struct Investor {
    RescueFunction p;
    bool operator==(const Investor&) const = default;
};

}  // namespace mechanism

/// Modified-ruin rule activated while the surplus is negative.
class Mechanism {
public:
    using Rule = std::variant<mechanism::Classical, mechanism::ParisianFixed, mechanism::ParisianExponential,
                              mechanism::CumulativeParisianFixed, mechanism::CumulativeParisianExponential,
                              mechanism::Omega, mechanism::DebitInterest, mechanism::Investor>;

    Mechanism(Rule rule);  // NOLINT(google-explicit-constructor)
    template <class T>
        requires(std::is_constructible_v<Rule, T &&> && !std::is_same_v<std::remove_cvref_t<T>, Rule> &&
                 !std::is_same_v<std::remove_cvref_t<T>, Mechanism>)
    Mechanism(T&& alternative)  // NOLINT(google-explicit-constructor)
        : Mechanism(Rule(std::forward<T>(alternative))) {}

    const Rule& rule() const { return rule_; }
    std::string kind() const;

    template <class T>
    bool is() const {
        return std::holds_alternative<T>(rule_);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(rule_);
    }

    /// True when mechanism state carries over from one excursion to the next.
    bool is_cumulative() const;

    bool operator==(const Mechanism&) const = default;

private:
    Rule rule_;
};

/// Per-path memory of a mechanism.
///
/// `remaining_budget` is the time still allowed below zero (cumulative
/// variants; infinite otherwise). `accumulated_hazard` is the integrated
/// omega rate of the current excursion.
struct MechanismState {
    std::size_t mechanism_index = 0;
    double remaining_budget = std::numeric_limits<double>::infinity();
    double accumulated_hazard = 0.0;
    bool rescue_consumed = false;

    bool operator==(const MechanismState&) const = default;
};

/// Fresh state at the start of a path. Draws the Exp(rate) budget for
/// CumulativeParisianExponential from `clocks`.
MechanismState initial_state(const Mechanism& mech, RandomStream& clocks);

enum class ExcursionOutcome {
    RecoveredAtZero,
    Ruined,
    EventBudgetExceeded,
};

struct ExcursionResult {
    ExcursionOutcome outcome;
    MechanismState state;
    double duration = 0.0;      ///< time spent below zero (up to recovery or ruin)
    std::uint64_t claims = 0;   ///< claims that arrived during the excursion
};

/// Plays out one excursion below zero starting at surplus -entry_deficit.
///
/// Between claims the surplus rises at rate c (debit interest: U' = c + beta U);
/// claims arriving during the excursion push it further down. The excursion
/// ends at the first return to zero or when the mechanism declares ruin.
/// Investor resolves in a single rescue draw. Claim arrivals and sizes come
/// from `rng.events`, mechanism randomness from `rng.clocks`.
ExcursionResult resolve_excursion(const Mechanism& mech, MechanismState state, double entry_deficit,
                                  const ModelParams& model, PathRandom& rng,
                                  std::uint64_t max_events = std::numeric_limits<std::uint64_t>::max());

struct HazardSegment {
    double consumed_hazard;
    std::optional<double> trigger_offset;
};

/// Integrates omega along U(s) = start + drift * s for s in [0, duration],
/// exactly per constant piece. If the integral reaches `hazard_budget`, the
/// time offset where it does is returned along with consumed = budget.
HazardSegment trigger_time_omega(const RateFunction& omega, double segment_start_surplus, double drift,
                                 double duration, double hazard_budget);

/// Time for U' = c + beta U to climb from -deficit to zero, or nullopt when
/// deficit >= c / beta (the surplus can never recover).
std::optional<double> debit_interest_recovery_time(double c, double beta, double deficit);

}  // namespace ruinkit
