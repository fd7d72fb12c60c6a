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

#include "nakcss/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "nakcss/error.hpp"

namespace nakcss {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) throw DomainError("invalid SystemConfig: " + what);
}

bool positive_finite(double v)
{
    return v > 0.0 && std::isfinite(v);
}

} // namespace

void SystemConfig::validate() const
{
    require(positive_finite(pp_over_sigma2), "pp_over_sigma2 must be > 0");
    require(positive_finite(ps_over_sigma2), "ps_over_sigma2 must be > 0");
    require(positive_finite(r_pt), "r_pt must be > 0");
    require(r_st >= 0.0 && std::isfinite(r_st), "r_st must be >= 0");
    require(alpha >= 0.0 && alpha < 1.0, "alpha must lie in [0, 1)");
    require(n_antennas >= 1, "n_antennas must be >= 1");
    require(m >= 0.5 && std::isfinite(m), "m must be >= 0.5");
    require(positive_finite(k), "k must be > 0");
    require(positive_finite(d2), "d2 must be > 0");
    require(d2 != 1.0, "d2 == 1 puts ST on top of PR (d3 = 0)");
}

double ChannelRealization::gamma2_sum() const
{
    return std::accumulate(gamma2.begin(), gamma2.end(), 0.0);
}

Topology derive_topology(const SystemConfig& config)
{
    config.validate();
    Topology t;
    t.distance = {1.0, config.d2, std::abs(1.0 - config.d2), config.d2 / 2.0, config.d2 / 2.0};
    for (std::size_t i = 0; i < kLinkCount; ++i) {
        t.omega[i] = std::pow(t.distance[i], -config.k);
        if (!positive_finite(t.omega[i])) {
            throw DomainError("degenerate geometry: Omega_" + std::to_string(i + 1) +
                              " is not finite for d2=" + std::to_string(config.d2));
        }
    }
    return t;
}

Thresholds derive_thresholds(const SystemConfig& config)
{
    config.validate();
    Thresholds th;
    th.rho1 = std::exp2(2.0 * config.r_pt) - 1.0;
    th.rho2 = std::exp2(config.r_pt) - 1.0;
    th.rho3 = std::exp2(2.0 * config.r_st) - 1.0;
    th.alpha_hat = th.rho1 / (th.rho1 + 1.0);
    return th;
}

ChannelSampler::ChannelSampler(const SystemConfig& config, const Topology& topology)
    : unit_(config.m, 1.0), n_antennas_(config.n_antennas)
{
    config.validate();
    for (std::size_t i = 0; i < kLinkCount; ++i) {
        scale_[i] = topology.omega[i] / config.m;
    }
}

void ChannelSampler::draw(Rng& rng, ChannelRealization& out)
{
    // Draw order is part of the reproducibility contract: g1, g2[0..N), g3, g4, g5.
    out.gamma1 = scale_[0] * unit_(rng);
    out.gamma2.resize(static_cast<std::size_t>(n_antennas_));
    for (double& g : out.gamma2) {
        g = scale_[1] * unit_(rng);
    }
    out.gamma3 = scale_[2] * unit_(rng);
    out.gamma4 = scale_[3] * unit_(rng);
    out.gamma5 = scale_[4] * unit_(rng);
}

ChannelRealization sample_realization(const SystemConfig& config, const Topology& topology,
                                      Rng& rng)
{
    ChannelSampler sampler(config, topology);
    ChannelRealization out;
    sampler.draw(rng, out);
    return out;
}

} // namespace nakcss
