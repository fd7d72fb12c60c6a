/*
   Copyright 2026 The nakcss Authors

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

#include "nakcss/model.hpp"

namespace nakcss {

/// Achievable rates (bit/s/Hz) for one channel draw, noise power 1, no
/// high-SNR approximation.
struct RateTuple {
    double r_st_link = 0.0;  ///< PT -> ST over the N-antenna sum, half duplex
    double r_p = 0.0;        ///< PR after combining the direct and relayed copies
    double r_pd_half = 0.0;  ///< PR from the direct copy only, half duplex
    double r_sd = 0.0;       ///< PT -> SR, half duplex
    double r_s = 0.0;        ///< ST -> SR after the primary is cancelled
};

RateTuple rates_for_realization(const SystemConfig& config, const ChannelRealization& ch);

// Per-realization outage decisions. A rate equal to its target counts as an
// outage. The primary decision reads gamma3 only if ST decoded.
bool primary_outage_event(const SystemConfig& config, const ChannelRealization& ch);
bool secondary_outage_event(const SystemConfig& config, const ChannelRealization& ch);
bool direct_outage_event(const SystemConfig& config, const ChannelRealization& ch);

struct OutageEstimate {
    double p_hat = 0.0;          ///< failures / trials
    std::uint64_t failures = 0;
    std::uint64_t trials = 0;
    double std_error = 0.0;      ///< sqrt(p_hat (1 - p_hat) / trials)
    std::uint64_t seed = 0;
};

OutageEstimate make_estimate(std::uint64_t failures, std::uint64_t trials, std::uint64_t seed);

/// Trials per substream. Chunk c of a run seeded with s draws from its own
/// generator seeded by (s, c), so results do not depend on how chunks are
/// spread over workers. Changing this value changes every published estimate.
inline constexpr std::uint64_t kChunkTrials = 8192;

/// Generator for chunk `chunk` of a run with master seed `seed`.
Rng chunk_generator(std::uint64_t seed, std::uint64_t chunk);

struct SimulationOptions {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;  ///< 0 picks std::thread::hardware_concurrency()
};

/// All three estimates from one shared set of realizations.
struct SimulationResult {
    OutageEstimate primary;
    OutageEstimate secondary;
    OutageEstimate direct;
};

SimulationResult simulate_all(const SystemConfig& config, const SimulationOptions& options);

OutageEstimate simulate_primary(const SystemConfig& config, const SimulationOptions& options);
OutageEstimate simulate_secondary(const SystemConfig& config, const SimulationOptions& options);
OutageEstimate simulate_direct(const SystemConfig& config, const SimulationOptions& options);

} // namespace nakcss
