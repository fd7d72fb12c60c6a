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

// m = 1 closed forms. Power gains are exponential, the N-antenna sum at ST is
// Erlang(N). Deliberately self-contained: nothing here calls into gammafun.

#include <cmath>
#include <limits>
#include <string>

#include "nakcss/analysis.hpp"
#include "nakcss/error.hpp"

namespace nakcss {

namespace {

void require_rayleigh(const SystemConfig& config)
{
    config.validate();
    if (config.m != 1.0) {
        throw DomainError("Rayleigh closed forms need m == 1, got m=" + std::to_string(config.m));
    }
}

double snr_arg(const SystemConfig& c, double omega, double rho)
{
    return rho / (omega * c.pp_over_sigma2);
}

struct ErlangTails {
    double cdf;
    double survival;
};

// Erlang(n) with unit rate at t. The smaller tail is summed directly, the
// other one taken as its complement.
ErlangTails erlang(int n, double t)
{
    if (t < n) {
        // cdf = e^{-t} sum_{j >= n} t^j / j!
        double term = std::exp(-t);
        for (int j = 1; j <= n; ++j) term *= t / j;
        double cdf = 0.0;
        for (int j = n; j < n + 10000; ++j) {
            cdf += term;
            term *= t / (j + 1);
            if (term <= cdf * 1e-17) break;
        }
        return {cdf, 1.0 - cdf};
    }
    double term = std::exp(-t);
    double survival = 0.0;
    for (int j = 0; j < n; ++j) {
        survival += term;
        term *= t / (j + 1);
    }
    return {1.0 - survival, survival};
}

double log_survival(const ErlangTails& e)
{
    return e.cdf < 0.5 ? std::log1p(-e.cdf) : std::log(e.survival);
}

} // namespace

AnalysisPoint rayleigh_oracle(const SystemConfig& config, const Topology& topology,
                              const Thresholds& thresholds)
{
    require_rayleigh(config);
    const double t1_half = snr_arg(config, topology.omega_of(Link::PtPr), thresholds.rho1);
    const double t1_full = snr_arg(config, topology.omega_of(Link::PtPr), thresholds.rho2);
    const ErlangTails st = erlang(config.n_antennas,
                                  snr_arg(config, topology.omega_of(Link::PtSt), thresholds.rho1));

    AnalysisPoint pt;
    pt.p_d = -std::expm1(-t1_full);

    const double fallback = st.cdf * -std::expm1(-t1_half);
    if (config.alpha >= thresholds.alpha_hat) {
        pt.branch = AlphaBranch::AtOrAboveAlphaHat;
        pt.f_op = fallback;
    } else {
        pt.branch = AlphaBranch::BelowAlphaHat;
        const double margin = thresholds.rho1 - config.alpha / (1.0 - config.alpha);
        const double t_relay = snr_arg(config, topology.omega_of(Link::PtPr), margin);
        pt.f_op = margin > 0.0 ? st.survival * -std::expm1(-t_relay) + fallback : fallback;
    }

    const double t5 = snr_arg(config, topology.omega_of(Link::PtSr), thresholds.rho1);
    const double t4 = thresholds.rho3 /
                      (topology.omega_of(Link::StSr) * (1.0 - config.alpha) * config.ps_over_sigma2);
    pt.f_os = -std::expm1(log_survival(st) - t5 - t4);
    return pt;
}

CriticalAlpha rayleigh_critical_alpha(const SystemConfig& config, const Topology& topology,
                                      const Thresholds& thresholds)
{
    require_rayleigh(config);
    const double omega1 = topology.omega_of(Link::PtPr);
    const ErlangTails st = erlang(config.n_antennas,
                                  snr_arg(config, topology.omega_of(Link::PtSt), thresholds.rho1));
    if (!(st.survival > 0.0)) {
        throw DomainError("rayleigh_critical_alpha: ST never decodes the primary signal");
    }
    const double p_direct = -std::expm1(-snr_arg(config, omega1, thresholds.rho2));
    const double p_half = -std::expm1(-snr_arg(config, omega1, thresholds.rho1));

    CriticalAlpha out;
    out.phi = (p_direct - p_half * st.cdf) / st.survival;
    if (out.phi < 0.0) {
        out.status = AlphaRequirement::Unreachable;
        out.chi = std::numeric_limits<double>::quiet_NaN();
        out.alpha_tilde = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    if (out.phi >= 1.0) {
        out.status = AlphaRequirement::NoneNeeded;
        out.chi = std::numeric_limits<double>::infinity();
        return out;
    }
    // exponential quantile: -ln(1 - phi)
    out.chi = omega1 * config.pp_over_sigma2 * -std::log1p(-out.phi);
    if (out.chi >= thresholds.rho1) {
        out.status = AlphaRequirement::NoneNeeded;
        return out;
    }
    out.status = AlphaRequirement::Required;
    out.alpha_tilde = (thresholds.rho1 - out.chi) / (1.0 + thresholds.rho1 - out.chi);
    return out;
}

CriticalRadius rayleigh_critical_omega2(const SystemConfig& config, const Topology& topology,
                                        const Thresholds& thresholds)
{
    require_rayleigh(config);
    if (config.n_antennas != 1) {
        throw DomainError("rayleigh_critical_omega2: closed form needs n_antennas == 1");
    }
    const double omega1 = topology.omega_of(Link::PtPr);
    CriticalRadius out;
    out.ratio = std::expm1(-snr_arg(config, omega1, thresholds.rho2)) /
                std::expm1(-snr_arg(config, omega1, thresholds.rho1));
    if (!(out.ratio > 0.0 && out.ratio < 1.0)) {
        throw DomainError("rayleigh_critical_omega2: ratio outside (0, 1)");
    }
    out.omega2_tilde = thresholds.rho1 / (config.pp_over_sigma2 * -std::log1p(-out.ratio));
    out.d2_tilde = std::pow(out.omega2_tilde, -1.0 / config.k);
    return out;
}

} // namespace nakcss
