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

#include <array>
#include <cstddef>
#include <random>
#include <vector>

namespace nakcss {

/// Operating point of the two-phase cooperative spectrum sharing protocol.
///
/// Powers are carried as transmit SNRs (P / sigma^2, linear); noise power is
/// fixed to 1 everywhere downstream. Defaults reproduce the reference
/// collinear scenario: 20 dB primary, 30 dB secondary, unit target rates,
/// m = 0.7, k = 4.
struct SystemConfig {
    double pp_over_sigma2 = 100.0;
    double ps_over_sigma2 = 1000.0;
    double r_pt = 1.0;         ///< primary target rate, bit/s/Hz
    double r_st = 1.0;         ///< secondary target rate, bit/s/Hz
    double alpha = 0.5;        ///< share of P_s spent relaying the primary
    int n_antennas = 2;        ///< receive antennas at the secondary transmitter
    double m = 0.7;            ///< Nakagami fading figure, shared by all links
    double k = 4.0;            ///< path-loss exponent
    double d2 = 0.8;           ///< PT-ST distance, normalized to PT-PR

    /// Throws DomainError if any field violates its invariant.
    void validate() const;
};

/// The five links of the collinear layout, in the order used by Topology.
enum class Link : std::size_t { PtPr = 0, PtSt = 1, StPr = 2, StSr = 3, PtSr = 4 };

inline constexpr std::size_t kLinkCount = 5;

/// Normalized distances d_i and mean power gains Omega_i = d_i^{-k}.
struct Topology {
    std::array<double, kLinkCount> distance{};
    std::array<double, kLinkCount> omega{};

    double distance_of(Link l) const { return distance[static_cast<std::size_t>(l)]; }
    double omega_of(Link l) const { return omega[static_cast<std::size_t>(l)]; }
};

/// SNR thresholds implied by the target rates.
struct Thresholds {
    double rho1 = 0.0;       ///< 2^{2 R_pt} - 1, half-duplex primary threshold
    double rho2 = 0.0;       ///< 2^{R_pt} - 1, direct-link threshold
    double rho3 = 0.0;       ///< 2^{2 R_st} - 1, secondary threshold
    double alpha_hat = 0.0;  ///< rho1 / (rho1 + 1)
};

/// One draw of every link power gain |h|^2.
struct ChannelRealization {
    double gamma1 = 0.0;         ///< PT -> PR
    std::vector<double> gamma2;  ///< PT -> ST, one entry per antenna
    double gamma3 = 0.0;         ///< ST -> PR
    double gamma4 = 0.0;         ///< ST -> SR
    double gamma5 = 0.0;         ///< PT -> SR

    double gamma2_sum() const;
};

using Rng = std::mt19937_64;

/// Collinear layout: d1 = 1, d3 = |1 - d2|, d4 = d5 = d2 / 2.
/// Throws DomainError for d2 == 1 or an otherwise invalid config.
Topology derive_topology(const SystemConfig& config);

Thresholds derive_thresholds(const SystemConfig& config);

/// Draws Nakagami-m power gains for a fixed config and topology. Each gain is
/// gamma(shape m, scale Omega_i / m), so E[gamma_i] = Omega_i.
class ChannelSampler {
public:
    ChannelSampler(const SystemConfig& config, const Topology& topology);

    void draw(Rng& rng, ChannelRealization& out);

private:
    std::gamma_distribution<double> unit_;
    std::array<double, kLinkCount> scale_{};
    int n_antennas_;
};

ChannelRealization sample_realization(const SystemConfig& config, const Topology& topology,
                                      Rng& rng);

} // namespace nakcss
