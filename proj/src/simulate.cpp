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

#include "nakcss/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "nakcss/error.hpp"

namespace nakcss {

namespace {

double half_rate(double snr)
{
    return 0.5 * std::log2(1.0 + snr);
}

bool decoded_at_st(const SystemConfig& c, const ChannelRealization& ch)
{
    return half_rate(c.pp_over_sigma2 * ch.gamma2_sum()) > c.r_pt;
}

double relay_snr(const SystemConfig& c, double gamma3)
{
    const double ps_gain = c.ps_over_sigma2 * gamma3;
    return c.alpha * ps_gain / ((1.0 - c.alpha) * ps_gain + 1.0);
}

struct Counts {
    std::uint64_t primary = 0;
    std::uint64_t secondary = 0;
    std::uint64_t direct = 0;
};

Counts run_chunk(const SystemConfig& config, const Topology& topology, std::uint64_t seed,
                 std::uint64_t chunk, std::uint64_t trials)
{
    Rng rng = chunk_generator(seed, chunk);
    ChannelSampler sampler(config, topology);
    ChannelRealization ch;
    Counts counts;
    for (std::uint64_t i = 0; i < trials; ++i) {
        sampler.draw(rng, ch);
        counts.primary += primary_outage_event(config, ch);
        counts.secondary += secondary_outage_event(config, ch);
        counts.direct += direct_outage_event(config, ch);
    }
    return counts;
}

Counts count_outages(const SystemConfig& config, const SimulationOptions& options)
{
    if (options.trials < 1) {
        throw DomainError("simulation needs at least one trial");
    }
    const Topology topology = derive_topology(config);
    const std::uint64_t n_chunks = (options.trials + kChunkTrials - 1) / kChunkTrials;
    auto chunk_size = [&](std::uint64_t c) {
        return std::min(kChunkTrials, options.trials - c * kChunkTrials);
    };

    unsigned workers = options.workers != 0 ? options.workers
                                            : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_chunks));

    std::vector<Counts> per_worker(workers);
    std::atomic<std::uint64_t> next{0};
    auto work = [&](unsigned w) {
        for (std::uint64_t c = next++; c < n_chunks; c = next++) {
            const Counts got = run_chunk(config, topology, options.seed, c, chunk_size(c));
            per_worker[w].primary += got.primary;
            per_worker[w].secondary += got.secondary;
            per_worker[w].direct += got.direct;
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    Counts total;
    for (const Counts& c : per_worker) {
        total.primary += c.primary;
        total.secondary += c.secondary;
        total.direct += c.direct;
    }
    return total;
}

} // namespace

RateTuple rates_for_realization(const SystemConfig& config, const ChannelRealization& ch)
{
    const double pp = config.pp_over_sigma2;
    RateTuple r;
    r.r_st_link = half_rate(pp * ch.gamma2_sum());
    r.r_pd_half = half_rate(pp * ch.gamma1);
    r.r_p = half_rate(pp * ch.gamma1 + relay_snr(config, ch.gamma3));
    r.r_sd = half_rate(pp * ch.gamma5);
    r.r_s = half_rate((1.0 - config.alpha) * config.ps_over_sigma2 * ch.gamma4);
    return r;
}

bool primary_outage_event(const SystemConfig& config, const ChannelRealization& ch)
{
    const double direct_snr = config.pp_over_sigma2 * ch.gamma1;
    if (decoded_at_st(config, ch)) {
        return !(half_rate(direct_snr + relay_snr(config, ch.gamma3)) > config.r_pt);
    }
    // ST stays silent in phase 2
    return !(half_rate(direct_snr) > config.r_pt);
}

bool secondary_outage_event(const SystemConfig& config, const ChannelRealization& ch)
{
    const bool ok = decoded_at_st(config, ch) &&
                    half_rate(config.pp_over_sigma2 * ch.gamma5) > config.r_pt &&
                    half_rate((1.0 - config.alpha) * config.ps_over_sigma2 * ch.gamma4) > config.r_st;
    return !ok;
}

bool direct_outage_event(const SystemConfig& config, const ChannelRealization& ch)
{
    return !(std::log2(1.0 + config.pp_over_sigma2 * ch.gamma1) > config.r_pt);
}

OutageEstimate make_estimate(std::uint64_t failures, std::uint64_t trials, std::uint64_t seed)
{
    OutageEstimate e;
    e.failures = failures;
    e.trials = trials;
    e.seed = seed;
    e.p_hat = static_cast<double>(failures) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
    return e;
}

Rng chunk_generator(std::uint64_t seed, std::uint64_t chunk)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    return Rng(seq);
}

SimulationResult simulate_all(const SystemConfig& config, const SimulationOptions& options)
{
    const Counts c = count_outages(config, options);
    return {make_estimate(c.primary, options.trials, options.seed),
            make_estimate(c.secondary, options.trials, options.seed),
            make_estimate(c.direct, options.trials, options.seed)};
}

OutageEstimate simulate_primary(const SystemConfig& config, const SimulationOptions& options)
{
    return simulate_all(config, options).primary;
}

OutageEstimate simulate_secondary(const SystemConfig& config, const SimulationOptions& options)
{
    return simulate_all(config, options).secondary;
}

OutageEstimate simulate_direct(const SystemConfig& config, const SimulationOptions& options)
{
    return simulate_all(config, options).direct;
}

} // namespace nakcss
