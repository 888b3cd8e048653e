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

#include "ruinkit/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace ruinkit {

namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr std::uint64_t kChunk = 4096;
constexpr std::uint64_t kDeficitBatch = 1u << 16;

// Runs fn(begin, end, worker) over [0, n) in fixed-size chunks. Results must
// not depend on which worker handles which chunk.
template <class Fn>
void for_each_chunk(std::uint64_t n, unsigned workers, Fn&& fn) {
    const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
    workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, chunks)));

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto work = [&](unsigned worker) {
        try {
            for (std::uint64_t chunk = next++; chunk < chunks; chunk = next++) {
                const std::uint64_t begin = chunk * kChunk;
                fn(begin, std::min(n, begin + kChunk), worker);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = chunks;
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
}

struct Counts {
    std::uint64_t modified = 0;
    std::uint64_t classical = 0;
    std::uint64_t budget = 0;
};

}  // namespace

void SimConfig::validate() const {
    if (n_paths < 1) throw InvalidArgument("sim: n_paths must be >= 1");
    if (max_events_per_path < 1) throw InvalidArgument("sim: max_events_per_path must be >= 1");
    if (const auto* a = std::get_if<AutoBarrier>(&barrier)) {
        if (!(a->eps_trunc > 0.0 && a->eps_trunc <= 0.1)) throw InvalidArgument("sim: eps_trunc must lie in (0, 0.1]");
    } else if (!std::isfinite(std::get<FixedBarrier>(barrier).level)) {
        throw InvalidArgument("sim: fixed barrier must be finite");
    }
}

unsigned effective_workers(const SimConfig& cfg) {
    unsigned workers = cfg.workers != 0 ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("RUINKIT_THREADS")) {
        char* end = nullptr;
        const long value = std::strtol(cap, &end, 10);
        if (end != cap && value >= 1) workers = std::min(workers, static_cast<unsigned>(value));
    }
    return std::max(1u, workers);
}

Barrier resolve_barrier(const ModelParams& model, double u, const BarrierMode& mode) {
    const RegimeTag regime = classify_regime(model);
    const ClaimDistribution& claims = model.claims();
    // lambda mu / (c - lambda mu): heavy-tail prefactor of psi_cl
    const double heavy_factor = model.lambda() * mean(claims) / model.drift();

    if (const auto* fixed = std::get_if<FixedBarrier>(&mode)) {
        if (!(fixed->level > u)) throw InvalidArgument("sim: fixed barrier must lie above u");
        const double gap = fixed->level - u;
        if (const auto* cramer = std::get_if<CramerLight>(&regime)) {
            return {fixed->level, std::exp(-cramer->R * gap), false};
        }
        if (std::holds_alternative<SubexponentialHeavy>(regime)) {
            return {fixed->level, std::min(1.0, heavy_factor * integrated_tail_complement(claims, gap)), true};
        }
        return {fixed->level, std::numeric_limits<double>::quiet_NaN(), true};
    }

    const double eps = std::get<AutoBarrier>(mode).eps_trunc;
    if (const auto* cramer = std::get_if<CramerLight>(&regime)) {
        return {u + std::log(1.0 / eps) / cramer->R, eps, false};
    }
    if (std::holds_alternative<SubexponentialHeavy>(regime)) {
        const double gap = integrated_tail_quantile(claims, std::min(eps, eps / heavy_factor));
        return {u + gap, std::min(1.0, heavy_factor * integrated_tail_complement(claims, gap)), true};
    }
    throw RegimeUnavailable("automatic barrier needs a Cramer or heavy-tailed model; use a fixed barrier");
}

PathOutcome simulate_path(const ModelParams& model, const Mechanism& mech, double u, double barrier,
                          PathRandom& rng, std::uint64_t max_events, bool stop_at_first_passage) {
    const double c = model.c();
    const double lambda = model.lambda();
    const ClaimDistribution& claims = model.claims();

    PathOutcome out;
    MechanismState state = initial_state(mech, rng.clocks);
    double surplus = u;
    std::uint64_t events = 0;
    for (;;) {
        if (events >= max_events) {
            out.budget_exceeded = true;
            return out;
        }
        surplus += c * rng.events.exponential(lambda);
        if (surplus >= barrier) return out;
        surplus -= sample_claim(claims, rng.events);
        ++events;
        if (!(surplus < 0.0)) continue;

        const double deficit = -surplus;
        if (!out.classical_ruin_flag) {
            out.classical_ruin_flag = true;
            out.first_passage_deficit = deficit;
            if (stop_at_first_passage) {
                out.verdict = PathVerdict::Ruined;
                return out;
            }
        }
        ++out.n_excursions;
        const ExcursionResult excursion = resolve_excursion(mech, state, deficit, model, rng, max_events - events);
        events += excursion.claims;
        switch (excursion.outcome) {
            case ExcursionOutcome::Ruined:
                out.verdict = PathVerdict::Ruined;
                return out;
            case ExcursionOutcome::EventBudgetExceeded:
                out.budget_exceeded = true;
                return out;
            case ExcursionOutcome::RecoveredAtZero:
                state = excursion.state;
                surplus = 0.0;
                break;
        }
    }
}

Estimate binomial_estimate(std::uint64_t successes, std::uint64_t n) {
    if (n == 0) throw InvalidArgument("binomial_estimate: n must be >= 1");
    Estimate e;
    e.n = n;
    e.p_hat = static_cast<double>(successes) / static_cast<double>(n);
    e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n));
    e.ci_lo = std::clamp(e.p_hat - kZ95 * e.std_error, 0.0, 1.0);
    e.ci_hi = std::clamp(e.p_hat + kZ95 * e.std_error, 0.0, 1.0);
    return e;
}

RatioEstimate ratio_estimate(std::uint64_t modified_ruins, std::uint64_t classical_ruins, std::uint64_t n) {
    if (classical_ruins == 0) throw ZeroDenominator("ratio estimate: no classical ruin observed");
    if (modified_ruins > classical_ruins || classical_ruins > n) {
        throw InvalidArgument("ratio estimate: counts violate modified <= classical <= n");
    }
    const double nn = static_cast<double>(n);
    const double px = static_cast<double>(modified_ruins) / nn;
    const double py = static_cast<double>(classical_ruins) / nn;

    RatioEstimate r;
    r.modified_ruins = modified_ruins;
    r.classical_ruins = classical_ruins;
    r.n = n;
    r.ratio = static_cast<double>(modified_ruins) / static_cast<double>(classical_ruins);

    // Delta method for mean(X) / mean(Y); X <= Y pathwise so E[XY] = E[X].
    const double var_x = px * (1.0 - px);
    const double var_y = py * (1.0 - py);
    const double cov = px - px * py;
    const double numerator = std::max(0.0, var_x - 2.0 * r.ratio * cov + r.ratio * r.ratio * var_y);
    r.std_error = std::sqrt(numerator / nn) / py;
    r.ci_lo = r.ratio - kZ95 * r.std_error;
    r.ci_hi = r.ratio + kZ95 * r.std_error;
    return r;
}

PairedEstimate estimate_paired(const ModelParams& model, const Mechanism& mech, double u, const SimConfig& cfg) {
    cfg.validate();
    if (!(u >= 0.0)) throw InvalidArgument("simulate: u must be >= 0");
    const Barrier barrier = resolve_barrier(model, u, cfg.barrier);
    const unsigned workers = effective_workers(cfg);

    std::vector<Counts> per_worker(workers);
    for_each_chunk(cfg.n_paths, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned worker) {
        Counts local;
        for (std::uint64_t path = begin; path < end; ++path) {
            PathRandom rng(cfg.seed, path);
            const PathOutcome out = simulate_path(model, mech, u, barrier.level, rng, cfg.max_events_per_path);
            local.modified += out.verdict == PathVerdict::Ruined;
            local.classical += out.classical_ruin_flag;
            local.budget += out.budget_exceeded;
        }
        per_worker[worker].modified += local.modified;
        per_worker[worker].classical += local.classical;
        per_worker[worker].budget += local.budget;
    });

    Counts total;
    for (const Counts& c : per_worker) {
        total.modified += c.modified;
        total.classical += c.classical;
        total.budget += c.budget;
    }

    PairedEstimate result{binomial_estimate(total.modified, cfg.n_paths),
                          binomial_estimate(total.classical, cfg.n_paths), barrier, total.modified,
                          total.classical};
    for (Estimate* e : {&result.modified, &result.classical}) {
        e->truncation_bias_bound = barrier.bias_bound;
        e->bias_bound_heuristic = barrier.heuristic;
        e->budget_exceeded = total.budget;
    }
    return result;
}

Estimate estimate_ruin(const ModelParams& model, const Mechanism& mech, double u, const SimConfig& cfg) {
    return estimate_paired(model, mech, u, cfg).modified;
}

RatioEstimate estimate_ratio_crn(const ModelParams& model, const Mechanism& mech, double u, const SimConfig& cfg) {
    const PairedEstimate paired = estimate_paired(model, mech, u, cfg);
    return ratio_estimate(paired.modified_ruins, paired.classical_ruins, cfg.n_paths);
}

std::vector<PathOutcome> simulate_paths(const ModelParams& model, const Mechanism& mech, double u,
                                        const SimConfig& cfg) {
    cfg.validate();
    const Barrier barrier = resolve_barrier(model, u, cfg.barrier);
    std::vector<PathOutcome> outcomes(cfg.n_paths);
    for_each_chunk(cfg.n_paths, effective_workers(cfg), [&](std::uint64_t begin, std::uint64_t end, unsigned) {
        for (std::uint64_t path = begin; path < end; ++path) {
            PathRandom rng(cfg.seed, path);
            outcomes[path] = simulate_path(model, mech, u, barrier.level, rng, cfg.max_events_per_path);
        }
    });
    return outcomes;
}

// ---------------------------------------------------------------------------

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples) : samples_(std::move(samples)) {
    std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::cdf(double x) const {
    if (samples_.empty()) return 0.0;
    const auto below = std::upper_bound(samples_.begin(), samples_.end(), x) - samples_.begin();
    return static_cast<double>(below) / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::tail(double x) const { return 1.0 - cdf(x); }

double EmpiricalDistribution::ks_distance(const std::function<double(double)>& reference_cdf) const {
    const double n = static_cast<double>(samples_.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const double f = reference_cdf(samples_[i]);
        worst = std::max({worst, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return worst;
}

SampleBudgetExceeded::SampleBudgetExceeded(EmpiricalDistribution partial, std::uint64_t paths_used)
    : Error("deficit sampling: only " + std::to_string(partial.size()) + " classical ruins in " +
            std::to_string(paths_used) + " paths"),
      partial_(std::move(partial)),
      paths_used_(paths_used) {}

EmpiricalDistribution estimate_deficit_distribution(const ModelParams& model, double u, std::uint64_t n_conditional,
                                                    const SimConfig& cfg) {
    cfg.validate();
    if (!(u >= 0.0)) throw InvalidArgument("deficit sampling: u must be >= 0");
    if (n_conditional == 0) return {};

    const Barrier barrier = resolve_barrier(model, u, cfg.barrier);
    const Mechanism classical{mechanism::Classical{}};
    const unsigned workers = effective_workers(cfg);
    constexpr double kNone = -1.0;

    std::vector<double> deficits;
    deficits.reserve(n_conditional);
    std::vector<double> batch;
    std::uint64_t used = 0;
    while (used < cfg.n_paths && deficits.size() < n_conditional) {
        const std::uint64_t size = std::min(kDeficitBatch, cfg.n_paths - used);
        batch.assign(size, kNone);
        const std::uint64_t offset = used;
        for_each_chunk(size, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
            for (std::uint64_t i = begin; i < end; ++i) {
                PathRandom rng(cfg.seed, offset + i);
                const PathOutcome out =
                    simulate_path(model, classical, u, barrier.level, rng, cfg.max_events_per_path, true);
                if (out.first_passage_deficit) batch[i] = *out.first_passage_deficit;
            }
        });
        for (double d : batch) {
            if (d != kNone && deficits.size() < n_conditional) deficits.push_back(d);
        }
        used += size;
    }
    if (deficits.size() < n_conditional) {
        throw SampleBudgetExceeded(EmpiricalDistribution(std::move(deficits)), used);
    }
    return EmpiricalDistribution(std::move(deficits));
}

}  // namespace ruinkit
