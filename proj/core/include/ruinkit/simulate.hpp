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
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ruinkit/claims.hpp"
#include "ruinkit/error.hpp"
#include "ruinkit/mechanisms.hpp"
#include "ruinkit/random.hpp"

namespace ruinkit {

/// Survival barrier chosen from the regime so that the truncation bias is
/// at most eps_trunc (Cramer) or roughly so (heavy tails).
struct AutoBarrier {
    double eps_trunc = 1e-4;
    bool operator==(const AutoBarrier&) const = default;
};

/// Survival barrier at an absolute surplus level.
struct FixedBarrier {
    double level;
    bool operator==(const FixedBarrier&) const = default;
};

using BarrierMode = std::variant<AutoBarrier, FixedBarrier>;

struct SimConfig {
    std::uint64_t n_paths = 100000;
    std::uint64_t seed = 1;
    BarrierMode barrier = AutoBarrier{};
    std::uint64_t max_events_per_path = 10'000'000;
    /// Worker threads; 0 picks the hardware concurrency. RUINKIT_THREADS caps either.
    unsigned workers = 0;

    void validate() const;
    bool operator==(const SimConfig&) const = default;
};

/// Number of worker threads `simulate` will use for this configuration.
unsigned effective_workers(const SimConfig& cfg);

/// Resolved survival barrier for one initial capital.
struct Barrier {
    double level;
    double bias_bound;   ///< bound on P(ruin after reaching the barrier)
    bool heuristic;      ///< true when the bound is not rigorous (heavy tails)
};

/// Throws RegimeUnavailable for Auto mode when the model is in neither regime,
/// InvalidArgument when the barrier is not above u.
Barrier resolve_barrier(const ModelParams& model, double u, const BarrierMode& mode);

enum class PathVerdict {
    Ruined,
    SurvivedToBarrier,
};

struct PathOutcome {
    PathVerdict verdict = PathVerdict::SurvivedToBarrier;
    std::optional<double> first_passage_deficit;  ///< -U_T when T < inf
    bool classical_ruin_flag = false;
    std::uint32_t n_excursions = 0;
    bool budget_exceeded = false;  ///< max_events_per_path hit; counted as survival

    bool operator==(const PathOutcome&) const = default;
};

/// One trajectory of the surplus started at u, run until mechanism ruin or
/// until the surplus reaches `barrier`. With `stop_at_first_passage` the path
/// ends at the first passage below zero, whatever the mechanism would do.
PathOutcome simulate_path(const ModelParams& model, const Mechanism& mech, double u, double barrier,
                          PathRandom& rng, std::uint64_t max_events, bool stop_at_first_passage = false);

struct Estimate {
    double p_hat = 0.0;
    double std_error = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::uint64_t n = 0;
    double truncation_bias_bound = 0.0;
    bool bias_bound_heuristic = false;
    std::uint64_t budget_exceeded = 0;
};

/// Binomial estimate with a 95% normal interval clipped to [0, 1].
Estimate binomial_estimate(std::uint64_t successes, std::uint64_t n);

struct RatioEstimate {
    double ratio = 0.0;
    double std_error = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::uint64_t modified_ruins = 0;
    std::uint64_t classical_ruins = 0;
    std::uint64_t n = 0;
};

/// Ratio of means with a delta-method interval. Because modified ruin
/// implies classical ruin on every path, this reduces to a binomial
/// proportion over the classically ruined paths. Throws ZeroDenominator.
RatioEstimate ratio_estimate(std::uint64_t modified_ruins, std::uint64_t classical_ruins, std::uint64_t n);

/// Both verdicts from one pass over the same paths.
struct PairedEstimate {
    Estimate modified;
    Estimate classical;
    Barrier barrier;
    std::uint64_t modified_ruins = 0;
    std::uint64_t classical_ruins = 0;
};

PairedEstimate estimate_paired(const ModelParams& model, const Mechanism& mech, double u, const SimConfig& cfg);

/// Monte Carlo estimate of the modified ruin probability psi(u).
Estimate estimate_ruin(const ModelParams& model, const Mechanism& mech, double u, const SimConfig& cfg);

/// psi(u) / psi_cl(u) from common random numbers.
RatioEstimate estimate_ratio_crn(const ModelParams& model, const Mechanism& mech, double u, const SimConfig& cfg);

/// Every path outcome in path-index order (for pathwise comparisons).
std::vector<PathOutcome> simulate_paths(const ModelParams& model, const Mechanism& mech, double u,
                                        const SimConfig& cfg);

/// Sorted sample with its empirical distribution function.
class EmpiricalDistribution {
public:
    EmpiricalDistribution() = default;
    explicit EmpiricalDistribution(std::vector<double> samples);

    std::span<const double> samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }

    /// Fraction of samples <= x.
    double cdf(double x) const;
    /// Fraction of samples > x.
    double tail(double x) const;

    /// sup_x |F_n(x) - F(x)| for a continuous reference DF F.
    double ks_distance(const std::function<double(double)>& reference_cdf) const;

private:
    std::vector<double> samples_;
};

/// Thrown when the path budget runs out before enough classical ruins are seen.
class SampleBudgetExceeded : public Error {
public:
    SampleBudgetExceeded(EmpiricalDistribution partial, std::uint64_t paths_used);

    const EmpiricalDistribution& partial() const { return partial_; }
    std::uint64_t paths_used() const { return paths_used_; }

private:
    EmpiricalDistribution partial_;
    std::uint64_t paths_used_;
};

/// Conditional law of the deficit -U_T given T < inf, from the first
/// `n_conditional` classically ruined paths in path-index order. Uses at most
/// cfg.n_paths paths.
EmpiricalDistribution estimate_deficit_distribution(const ModelParams& model, double u, std::uint64_t n_conditional,
                                                    const SimConfig& cfg);

}  // namespace ruinkit
