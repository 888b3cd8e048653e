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

#include "ruinkit/mechanisms.hpp"

#include <algorithm>
#include <cmath>

#include "ruinkit/error.hpp"
#include "overloaded.hpp"

namespace ruinkit {

using detail::overloaded;

namespace {

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

// ---------------------------------------------------------------------------

RateFunction::RateFunction(Shape shape) : shape_(std::move(shape)) {
    std::visit(overloaded{
                   [](const ConstantRate& r) {
                       if (!(r.level >= 0.0) || !std::isfinite(r.level))
                           throw InvalidArgument("omega: constant level must be finite and >= 0");
                   },
                   [](const StepRate& r) {
                       if (r.levels.size() != r.breakpoints.size() + 1)
                           throw InvalidArgument("omega: step function needs one more level than breakpoints");
                       for (std::size_t i = 0; i < r.breakpoints.size(); ++i) {
                           if (!(r.breakpoints[i] < 0.0) || !std::isfinite(r.breakpoints[i]))
                               throw InvalidArgument("omega: breakpoints must be finite and negative");
                           if (i > 0 && !(r.breakpoints[i] < r.breakpoints[i - 1]))
                               throw InvalidArgument("omega: breakpoints must be strictly descending");
                       }
                       for (std::size_t i = 0; i < r.levels.size(); ++i) {
                           if (!(r.levels[i] >= 0.0) || !std::isfinite(r.levels[i]))
                               throw InvalidArgument("omega: levels must be finite and >= 0");
                           if (i > 0 && r.levels[i] < r.levels[i - 1])
                               throw InvalidArgument("omega: rate must not decrease as the surplus falls");
                       }
                   },
               },
               shape_);
}

double RateFunction::operator()(double surplus) const {
    if (surplus >= 0.0) return 0.0;
    return std::visit(overloaded{
                          [](const ConstantRate& r) { return r.level; },
                          [surplus](const StepRate& r) {
                              const auto deeper = std::count_if(r.breakpoints.begin(), r.breakpoints.end(),
                                                                [surplus](double b) { return b > surplus; });
                              return r.levels[static_cast<std::size_t>(deeper)];
                          },
                      },
                      shape_);
}

std::vector<double> RateFunction::breakpoints_between(double lo, double hi) const {
    std::vector<double> inside;
    if (const auto* step = std::get_if<StepRate>(&shape_)) {
        for (double b : step->breakpoints) {
            if (lo < b && b < hi) inside.push_back(b);
        }
    }
    std::sort(inside.begin(), inside.end());
    return inside;
}

// ---------------------------------------------------------------------------

RescueFunction::RescueFunction(Shape shape) : shape_(std::move(shape)) {
    std::visit(overloaded{
                   [](const ConstantRescue& r) {
                       if (!(r.p >= 0.0 && r.p <= 1.0)) throw InvalidArgument("rescue: constant p must lie in [0, 1]");
                   },
                   [](const ExponentialDecayRescue& r) {
                       if (!positive_finite(r.kappa)) throw InvalidArgument("rescue: kappa must be > 0");
                   },
                   [](const TableRescue& r) {
                       if (r.points.empty()) throw InvalidArgument("rescue: table must not be empty");
                       for (std::size_t i = 0; i < r.points.size(); ++i) {
                           const auto [y, p] = r.points[i];
                           if (!std::isfinite(y) || !std::isfinite(p))
                               throw InvalidArgument("rescue: table entries must be finite");
                           if (i > 0 && !(y > r.points[i - 1].first))
                               throw InvalidArgument("rescue: table must be sorted by strictly increasing y");
                       }
                   },
               },
               shape_);
}

std::vector<double> RescueFunction::kinks() const {
    std::vector<double> out;
    if (const auto* table = std::get_if<TableRescue>(&shape_)) {
        for (const auto& [y, p] : table->points) {
            if (y < 0.0) out.push_back(y);
        }
    }
    return out;
}

double rescue_probability(const RescueFunction& p, double y) {
    if (!(y < 0.0)) throw InvalidArgument("rescue_probability: y must be negative");
    return std::visit(overloaded{
                          [](const ConstantRescue& r) { return r.p; },
                          [y](const ExponentialDecayRescue& r) { return std::exp(r.kappa * y); },
                          [y](const TableRescue& r) {
                              const auto& pts = r.points;
                              double value;
                              if (y <= pts.front().first) {
                                  value = pts.front().second;
                              } else if (y >= pts.back().first) {
                                  value = pts.back().second;
                              } else {
                                  const auto upper = std::upper_bound(
                                      pts.begin(), pts.end(), y,
                                      [](double v, const std::pair<double, double>& pt) { return v < pt.first; });
                                  const auto lower = upper - 1;
                                  const double w = (y - lower->first) / (upper->first - lower->first);
                                  value = lower->second + w * (upper->second - lower->second);
                              }
                              return std::clamp(value, 0.0, 1.0);
                          },
                      },
                      p.shape());
}

// ---------------------------------------------------------------------------

Mechanism::Mechanism(Rule rule) : rule_(std::move(rule)) {
    std::visit(overloaded{
                   [](const mechanism::Classical&) {},
                   [](const mechanism::ParisianFixed& m) {
                       if (!positive_finite(m.r)) throw InvalidArgument("parisian_fixed: r must be > 0");
                   },
                   [](const mechanism::ParisianExponential& m) {
                       if (!positive_finite(m.rate)) throw InvalidArgument("parisian_exp: rate must be > 0");
                   },
                   [](const mechanism::CumulativeParisianFixed& m) {
                       if (!positive_finite(m.r)) throw InvalidArgument("cumulative_parisian_fixed: r must be > 0");
                   },
                   [](const mechanism::CumulativeParisianExponential& m) {
                       if (!positive_finite(m.rate)) throw InvalidArgument("cumulative_parisian_exp: rate must be > 0");
                   },
                   [](const mechanism::Omega&) {},
                   [](const mechanism::DebitInterest& m) {
                       if (!positive_finite(m.beta)) throw InvalidArgument("debit_interest: beta must be > 0");
                   },
                   [](const mechanism::Investor&) {},
               },
               rule_);
}

std::string Mechanism::kind() const {
    return std::visit(overloaded{
                          [](const mechanism::Classical&) { return "classical"; },
                          [](const mechanism::ParisianFixed&) { return "parisian_fixed"; },
                          [](const mechanism::ParisianExponential&) { return "parisian_exp"; },
                          [](const mechanism::CumulativeParisianFixed&) { return "cumulative_parisian_fixed"; },
                          [](const mechanism::CumulativeParisianExponential&) { return "cumulative_parisian_exp"; },
                          [](const mechanism::Omega&) { return "omega"; },
                          [](const mechanism::DebitInterest&) { return "debit_interest"; },
                          [](const mechanism::Investor&) { return "investor"; },
                      },
                      rule_);
}

bool Mechanism::is_cumulative() const {
    return is<mechanism::CumulativeParisianFixed>() || is<mechanism::CumulativeParisianExponential>();
}

MechanismState initial_state(const Mechanism& mech, RandomStream& clocks) {
    MechanismState state;
    state.mechanism_index = mech.rule().index();
    if (const auto* m = std::get_if<mechanism::CumulativeParisianFixed>(&mech.rule())) {
        state.remaining_budget = m->r;
    } else if (const auto* m = std::get_if<mechanism::CumulativeParisianExponential>(&mech.rule())) {
        state.remaining_budget = clocks.exponential(m->rate);
    }
    return state;
}

// ---------------------------------------------------------------------------

HazardSegment trigger_time_omega(const RateFunction& omega, double segment_start_surplus, double drift,
                                 double duration, double hazard_budget) {
    if (!(duration > 0.0)) return {0.0, std::nullopt};

    const double start = segment_start_surplus;
    const double end = start + drift * duration;

    std::vector<double> cuts{0.0, duration};
    if (drift != 0.0) {
        auto levels = omega.breakpoints_between(std::min(start, end), std::max(start, end));
        if (std::min(start, end) < 0.0 && 0.0 < std::max(start, end)) levels.push_back(0.0);
        for (double level : levels) cuts.push_back((level - start) / drift);
        std::sort(cuts.begin(), cuts.end());
    }

    double consumed = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double t0 = cuts[i];
        const double t1 = cuts[i + 1];
        if (!(t1 > t0)) continue;
        const double rate = omega(start + drift * 0.5 * (t0 + t1));
        const double piece = rate * (t1 - t0);
        if (rate > 0.0 && consumed + piece >= hazard_budget) {
            return {hazard_budget, t0 + (hazard_budget - consumed) / rate};
        }
        consumed += piece;
    }
    return {consumed, std::nullopt};
}

std::optional<double> debit_interest_recovery_time(double c, double beta, double deficit) {
    const double hopeless = c / beta;
    if (deficit >= hopeless) return std::nullopt;
    if (deficit <= 0.0) return 0.0;
    return -std::log1p(-deficit / hopeless) / beta;
}

namespace {

void check_state(const Mechanism& mech, const MechanismState& state) {
    if (state.mechanism_index != mech.rule().index()) {
        throw InvalidState("mechanism state was created for a different mechanism than '" + mech.kind() + "'");
    }
    if (mech.is_cumulative()) {
        if (!(state.remaining_budget >= 0.0) || !std::isfinite(state.remaining_budget))
            throw InvalidState("cumulative mechanism state needs a finite non-negative budget");
    } else if (state.remaining_budget != std::numeric_limits<double>::infinity()) {
        throw InvalidState("only cumulative mechanisms carry a time budget");
    }
    if (!(state.accumulated_hazard >= 0.0)) throw InvalidState("accumulated hazard must be >= 0");
}

// Excursion with linear drift +c between claims. `limit(segment_start,
// level, seg)` returns the ruin offset within the segment, if any.
template <class Limit>
ExcursionResult linear_excursion(MechanismState state, double entry_deficit, const ModelParams& model,
                                 PathRandom& rng, std::uint64_t max_events, Limit&& limit) {
    const double c = model.c();
    double level = -entry_deficit;
    double elapsed = 0.0;
    std::uint64_t claims = 0;
    for (;;) {
        const double to_zero = -level / c;
        const double wait = rng.events.exponential(model.lambda());
        const double segment = std::min(wait, to_zero);
        if (const std::optional<double> hit = limit(state, elapsed, level, segment)) {
            return {ExcursionOutcome::Ruined, state, elapsed + *hit, claims};
        }
        if (wait >= to_zero) {
            return {ExcursionOutcome::RecoveredAtZero, state, elapsed + to_zero, claims};
        }
        if (claims >= max_events) return {ExcursionOutcome::EventBudgetExceeded, state, elapsed, claims};
        elapsed += wait;
        level += c * wait - sample_claim(model.claims(), rng.events);
        ++claims;
    }
}

// Ruin once the time below zero in this excursion exceeds `allowed`.
auto time_limit(double allowed) {
    return [allowed](MechanismState&, double elapsed, double, double segment) -> std::optional<double> {
        if (elapsed + segment > allowed) return std::max(0.0, allowed - elapsed);
        return std::nullopt;
    };
}

// Time budget shared by all excursions of the path.
ExcursionResult cumulative_excursion(const MechanismState& state, double entry_deficit, const ModelParams& model,
                                     PathRandom& rng, std::uint64_t max_events) {
    auto result = linear_excursion(state, entry_deficit, model, rng, max_events, time_limit(state.remaining_budget));
    if (result.outcome == ExcursionOutcome::Ruined) {
        result.state.remaining_budget = 0.0;
    } else {
        result.state.remaining_budget = std::max(0.0, state.remaining_budget - result.duration);
    }
    return result;
}

}  // namespace

ExcursionResult resolve_excursion(const Mechanism& mech, MechanismState state, double entry_deficit,
                                  const ModelParams& model, PathRandom& rng, std::uint64_t max_events) {
    check_state(mech, state);
    if (!(entry_deficit > 0.0)) throw InvalidArgument("resolve_excursion: entry deficit must be > 0");

    return std::visit(
        overloaded{
            [&](const mechanism::Classical&) { return ExcursionResult{ExcursionOutcome::Ruined, state}; },
            [&](const mechanism::ParisianFixed& m) {
                return linear_excursion(state, entry_deficit, model, rng, max_events, time_limit(m.r));
            },
            [&](const mechanism::ParisianExponential& m) {
                const double allowed = rng.clocks.exponential(m.rate);
                return linear_excursion(state, entry_deficit, model, rng, max_events, time_limit(allowed));
            },
            [&](const mechanism::CumulativeParisianFixed&) {
                return cumulative_excursion(state, entry_deficit, model, rng, max_events);
            },
            [&](const mechanism::CumulativeParisianExponential&) {
                return cumulative_excursion(state, entry_deficit, model, rng, max_events);
            },
            [&](const mechanism::Omega& m) {
                // Fresh Exp(1) hazard budget per excursion; equal in law to one
                // global budget because the residual of an exponential is exponential.
                const double budget = rng.clocks.exponential(1.0);
                state.accumulated_hazard = 0.0;
                const double c = model.c();
                auto result = linear_excursion(
                    state, entry_deficit, model, rng, max_events,
                    [&m, budget, c](MechanismState& s, double, double level, double segment) -> std::optional<double> {
                        const HazardSegment piece =
                            trigger_time_omega(m.omega, level, c, segment, budget - s.accumulated_hazard);
                        s.accumulated_hazard += piece.consumed_hazard;
                        return piece.trigger_offset;
                    });
                if (result.outcome == ExcursionOutcome::RecoveredAtZero) result.state.accumulated_hazard = 0.0;
                return result;
            },
            [&](const mechanism::DebitInterest& m) {
                const double c = model.c();
                const double anchor = c / m.beta;
                double level = -entry_deficit;
                double elapsed = 0.0;
                std::uint64_t claims = 0;
                for (;;) {
                    const std::optional<double> to_zero = debit_interest_recovery_time(c, m.beta, -level);
                    if (!to_zero) return ExcursionResult{ExcursionOutcome::Ruined, state, elapsed, claims};
                    const double wait = rng.events.exponential(model.lambda());
                    if (wait >= *to_zero) {
                        return ExcursionResult{ExcursionOutcome::RecoveredAtZero, state, elapsed + *to_zero, claims};
                    }
                    if (claims >= max_events) {
                        return ExcursionResult{ExcursionOutcome::EventBudgetExceeded, state, elapsed, claims};
                    }
                    elapsed += wait;
                    level = -anchor + (level + anchor) * std::exp(m.beta * wait);
                    level -= sample_claim(model.claims(), rng.events);
                    ++claims;
                }
            },
            [&](const mechanism::Investor& m) {
                const double p = rescue_probability(m.p, -entry_deficit);
                if (rng.clocks.bernoulli(p)) {
                    state.rescue_consumed = true;
                    return ExcursionResult{ExcursionOutcome::RecoveredAtZero, state};
                }
                return ExcursionResult{ExcursionOutcome::Ruined, state};
            },
        },
        mech.rule());
}

}  // namespace ruinkit
