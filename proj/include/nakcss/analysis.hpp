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

#include "nakcss/model.hpp"

namespace nakcss {

/// Which piece of the primary outage expression applies.
enum class AlphaBranch { BelowAlphaHat, AtOrAboveAlphaHat };

const char* to_string(AlphaBranch b);

/// Closed-form outage probabilities at one operating point.
struct AnalysisPoint {
    double f_op = 0.0;  ///< primary outage with cooperation
    double f_os = 0.0;  ///< secondary outage
    double p_d = 0.0;   ///< primary outage over the direct link alone
    AlphaBranch branch = AlphaBranch::BelowAlphaHat;
};

// Building blocks. All use the high-SNR form of the MRC-combined primary rate
// (P_s >> sigma^2); the simulator evaluates the exact rate instead.

/// Pr{R_p > R_pt}: 1 for alpha >= alpha_hat, else Q(m, x1(rho1 - alpha/(1-alpha))).
double prob_rp_exceeds(const SystemConfig& config, const Topology& topology,
                       const Thresholds& thresholds);

/// Pr{R_ST > R_pt}: the N-antenna sum at ST clears the half-duplex threshold.
double prob_st_decodes(const SystemConfig& config, const Topology& topology,
                       const Thresholds& thresholds);

/// Pr{R_ST < R_pt}; prob_st_decodes + prob_st_fails == 1 exactly.
double prob_st_fails(const SystemConfig& config, const Topology& topology,
                     const Thresholds& thresholds);

/// Pr{R_pd / 2 > R_pt}: the direct link alone carries the primary in phase 1.
double prob_direct_half(const SystemConfig& config, const Topology& topology,
                        const Thresholds& thresholds);

/// F_op, piecewise in alpha around alpha_hat.
double primary_outage(const SystemConfig& config, const Topology& topology,
                      const Thresholds& thresholds);

/// P_d = P(m, x1(rho2)), the no-cooperation baseline.
double direct_outage(const SystemConfig& config, const Topology& topology,
                     const Thresholds& thresholds);

/// F_os. Tends to 1 as alpha -> 1.
double secondary_outage(const SystemConfig& config, const Topology& topology,
                        const Thresholds& thresholds);

AnalysisPoint analyze(const SystemConfig& config, const Topology& topology,
                      const Thresholds& thresholds);
AnalysisPoint analyze(const SystemConfig& config);

/// Largest PT-ST distance at which cooperation in the alpha >= alpha_hat
/// regime leaves the primary no worse than the direct link.
/// Access holds for Omega_2 >= omega2_tilde, i.e. d2 <= d2_tilde.
struct CriticalRadius {
    double omega2_tilde = 0.0;
    double d2_tilde = 0.0;
    double ratio = 0.0;  ///< P(m, x1(rho2)) / P(m, x1(rho1)), the quantile argument
};

/// Throws DomainError when the quantile argument falls outside (0, 1).
CriticalRadius critical_omega2(const SystemConfig& config, const Topology& topology,
                               const Thresholds& thresholds);

enum class AlphaRequirement {
    Required,     ///< access needs alpha >= alpha_tilde
    NoneNeeded,   ///< every alpha in [0, alpha_hat) already beats the direct link
    Unreachable,  ///< no alpha below alpha_hat beats the direct link
};

const char* to_string(AlphaRequirement r);

/// Minimum power allocation for F_op1 <= P_d. chi and phi are the
/// intermediate quantities of the closed form; alpha_tilde is meaningful only
/// when status != Unreachable (0 for NoneNeeded).
struct CriticalAlpha {
    AlphaRequirement status = AlphaRequirement::Required;
    double alpha_tilde = 0.0;
    double chi = 0.0;
    double phi = 0.0;
};

/// (rho1 - chi) / (1 + rho1 - chi), clamped to 0 when chi >= rho1.
double alpha_from_chi(double rho1, double chi);

/// Throws DomainError if ST never decodes (prob_st_decodes == 0).
CriticalAlpha critical_alpha(const SystemConfig& config, const Topology& topology,
                             const Thresholds& thresholds);

/// Rayleigh (m = 1) closed forms built from exponentials and the Erlang CDF
/// only. Shares no code with gammafun; used to cross-check the general path.
/// Throws DomainError unless config.m == 1.
AnalysisPoint rayleigh_oracle(const SystemConfig& config, const Topology& topology,
                              const Thresholds& thresholds);

/// Rayleigh counterpart of critical_alpha; the quantile of an exponential is
/// closed form so no root finding is involved.
CriticalAlpha rayleigh_critical_alpha(const SystemConfig& config, const Topology& topology,
                                      const Thresholds& thresholds);

/// Rayleigh counterpart of critical_omega2, single antenna only
/// (throws DomainError for n_antennas != 1).
CriticalRadius rayleigh_critical_omega2(const SystemConfig& config, const Topology& topology,
                                        const Thresholds& thresholds);

} // namespace nakcss
