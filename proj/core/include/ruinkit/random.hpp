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

#include <array>
#include <cstdint>

namespace ruinkit {

/// Philox4x32-10 counter-based block function.
///
/// Maps a 128-bit counter and a 64-bit key to 128 pseudo-random bits.
/// Pure function of its inputs, so streams can be addressed directly by
/// (seed, path, substream, draw) without any sequential state.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Deterministic random stream owned by a single path.
///
/// Keyed by the run seed; the counter carries the path index, a substream
/// id and a running block index. Two streams with different
/// (path_index, substream) never overlap, and the values drawn from a
/// stream do not depend on which thread draws them.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t path_index, std::uint32_t substream = 0);

    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();

    /// Exp(rate) by inversion.
    double exponential(double rate);

    /// Standard normal by Box-Muller (one value per call).
    double normal();

    /// Gamma(shape, 1) by Marsaglia-Tsang squeeze.
    double standard_gamma(double shape);

    /// Bernoulli(p).
    bool bernoulli(double p);

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> block_{};
    int cursor_ = 4;
};

/// Substreams used by the path simulator.
enum class Substream : std::uint32_t {
    Events = 0,    ///< inter-arrival times and claim sizes
    Clocks = 1,    ///< mechanism randomness (Parisian clocks, hazard budgets, rescue draws)
};

/// The pair of streams owned by one simulated path.
struct PathRandom {
    RandomStream events;
    RandomStream clocks;

    PathRandom(std::uint64_t seed, std::uint64_t path_index)
        : events(seed, path_index, static_cast<std::uint32_t>(Substream::Events)),
          clocks(seed, path_index, static_cast<std::uint32_t>(Substream::Clocks)) {}
};

}  // namespace ruinkit
