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

#include "nakcss/analysis.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nakcss/error.hpp"
#include "nakcss/gammafun.hpp"

namespace nakcss {

using gammafun::inv_reg_lower_gamma;
using gammafun::reg_lower_gamma;
using gammafun::reg_upper_gamma;

namespace {

// Normalized threshold m * rho / (Omega * P/sigma^2) fed to the gamma CDF.
double gamma_arg(const SystemConfig& c, double omega, double rho)
{
    return c.m * rho / (omega * c.pp_over_sigma2);
}

double st_shape(const SystemConfig& c)
{
    return c.n_antennas * c.m;
}

// ln Pr{X > x} for X ~ gamma(a, 1), accurate whichever tail is small.
double log_survival(double a, double x)
{
    const double p = reg_lower_gamma(a, x);
    return p < 0.5 ? std::log1p(-p) : std::log(reg_upper_gamma(a, x));
}

} // namespace

const char* to_string(AlphaBranch b)
{
    return b == AlphaBranch::BelowAlphaHat ? "below_alpha_hat" : "at_or_above_alpha_hat";
}

const char* to_string(AlphaRequirement r)
{
    switch (r) {
    case AlphaRequirement::Required:
        return "required";
    case AlphaRequirement::NoneNeeded:
        return "none_needed";
    case AlphaRequirement::Unreachable:
        return "unreachable";
    }
    return "unknown";
}

double prob_rp_exceeds(const SystemConfig& config, const Topology& topology,
                       const Thresholds& thresholds)
{
    if (config.alpha >= thresholds.alpha_hat) return 1.0;
    // Branch is chosen first: rho1 - alpha/(1-alpha) > 0 whenever alpha < alpha_hat.
    const double margin = thresholds.rho1 - config.alpha / (1.0 - config.alpha);
    if (margin <= 0.0) return 1.0;
    return reg_upper_gamma(config.m, gamma_arg(config, topology.omega_of(Link::PtPr), margin));
}

double prob_st_decodes(const SystemConfig& config, const Topology& topology,
                       const Thresholds& thresholds)
{
    return reg_upper_gamma(st_shape(config),
                           gamma_arg(config, topology.omega_of(Link::PtSt), thresholds.rho1));
}

double prob_st_fails(const SystemConfig& config, const Topology& topology,
                     const Thresholds& thresholds)
{
    return 1.0 - prob_st_decodes(config, topology, thresholds);
}

double prob_direct_half(const SystemConfig& config, const Topology& topology,
                        const Thresholds& thresholds)
{
    return reg_upper_gamma(config.m,
                           gamma_arg(config, topology.omega_of(Link::PtPr), thresholds.rho1));
}

double primary_outage(const SystemConfig& config, const Topology& topology,
                      const Thresholds& thresholds)
{
    // F_op = A (1 - C) + (1 - A)(1 - B), written as a sum of non-negative
    // terms so small outages keep full relative precision.
    const double x2 = gamma_arg(config, topology.omega_of(Link::PtSt), thresholds.rho1);
    const double st_fail = reg_lower_gamma(st_shape(config), x2);
    const double direct_fail =
        reg_lower_gamma(config.m, gamma_arg(config, topology.omega_of(Link::PtPr), thresholds.rho1));
    const double fallback = st_fail * direct_fail;
    if (config.alpha >= thresholds.alpha_hat) return fallback;

    const double margin = thresholds.rho1 - config.alpha / (1.0 - config.alpha);
    if (margin <= 0.0) return fallback;
    const double st_ok = reg_upper_gamma(st_shape(config), x2);
    const double relay_fail =
        reg_lower_gamma(config.m, gamma_arg(config, topology.omega_of(Link::PtPr), margin));
    return st_ok * relay_fail + fallback;
}

double direct_outage(const SystemConfig& config, const Topology& topology,
                     const Thresholds& thresholds)
{
    return reg_lower_gamma(config.m,
                           gamma_arg(config, topology.omega_of(Link::PtPr), thresholds.rho2));
}

double secondary_outage(const SystemConfig& config, const Topology& topology,
                        const Thresholds& thresholds)
{
    const double own_share = 1.0 - config.alpha;
    if (!(own_share > 0.0)) return 1.0;
    const double x_own =
        config.m * thresholds.rho3 / (topology.omega_of(Link::StSr) * own_share * config.ps_over_sigma2);
    if (!std::isfinite(x_own)) return 1.0;

    const double log_success =
        log_survival(st_shape(config),
                     gamma_arg(config, topology.omega_of(Link::PtSt), thresholds.rho1)) +
        log_survival(config.m, gamma_arg(config, topology.omega_of(Link::PtSr), thresholds.rho1)) +
        log_survival(config.m, x_own);
    return -std::expm1(log_success);
}

AnalysisPoint analyze(const SystemConfig& config, const Topology& topology,
                      const Thresholds& thresholds)
{
    AnalysisPoint pt;
    pt.f_op = primary_outage(config, topology, thresholds);
    pt.f_os = secondary_outage(config, topology, thresholds);
    pt.p_d = direct_outage(config, topology, thresholds);
    pt.branch = config.alpha >= thresholds.alpha_hat ? AlphaBranch::AtOrAboveAlphaHat
                                                     : AlphaBranch::BelowAlphaHat;
    return pt;
}

AnalysisPoint analyze(const SystemConfig& config)
{
    return analyze(config, derive_topology(config), derive_thresholds(config));
}

CriticalRadius critical_omega2(const SystemConfig& config, const Topology& topology,
                               const Thresholds& thresholds)
{
    const double omega1 = topology.omega_of(Link::PtPr);
    const double p_direct = reg_lower_gamma(config.m, gamma_arg(config, omega1, thresholds.rho2));
    const double p_half = reg_lower_gamma(config.m, gamma_arg(config, omega1, thresholds.rho1));

    CriticalRadius out;
    out.ratio = p_direct / p_half;
    if (!(out.ratio > 0.0 && out.ratio < 1.0)) {
        throw DomainError("critical_omega2: quantile argument " + std::to_string(out.ratio) +
                          " outside (0, 1)");
    }
    const double x = inv_reg_lower_gamma(st_shape(config), out.ratio);
    out.omega2_tilde = config.m * thresholds.rho1 / (config.pp_over_sigma2 * x);
    out.d2_tilde = std::pow(out.omega2_tilde, -1.0 / config.k);
    return out;
}

double alpha_from_chi(double rho1, double chi)
{
    if (chi >= rho1) return 0.0;
    return (rho1 - chi) / (1.0 + rho1 - chi);
}

CriticalAlpha critical_alpha(const SystemConfig& config, const Topology& topology,
                             const Thresholds& thresholds)
{
    const double omega1 = topology.omega_of(Link::PtPr);
    const double x2 = gamma_arg(config, topology.omega_of(Link::PtSt), thresholds.rho1);
    const double st_ok = reg_upper_gamma(st_shape(config), x2);
    if (!(st_ok > 0.0)) {
        throw DomainError("critical_alpha: ST never decodes the primary signal");
    }
    const double st_fail = reg_lower_gamma(st_shape(config), x2);
    const double p_direct = reg_lower_gamma(config.m, gamma_arg(config, omega1, thresholds.rho2));
    const double p_half = reg_lower_gamma(config.m, gamma_arg(config, omega1, thresholds.rho1));

    CriticalAlpha out;
    out.phi = (p_direct - p_half * st_fail) / st_ok;
    if (out.phi < 0.0) {
        // even the alpha-free floor F_op2 exceeds P_d
        out.status = AlphaRequirement::Unreachable;
        out.chi = std::numeric_limits<double>::quiet_NaN();
        out.alpha_tilde = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    if (out.phi >= 1.0) {
        out.status = AlphaRequirement::NoneNeeded;
        out.chi = std::numeric_limits<double>::infinity();
        out.alpha_tilde = 0.0;
        return out;
    }
    out.chi = omega1 * config.pp_over_sigma2 / config.m * inv_reg_lower_gamma(config.m, out.phi);
    out.alpha_tilde = alpha_from_chi(thresholds.rho1, out.chi);
    out.status = out.alpha_tilde > 0.0 ? AlphaRequirement::Required : AlphaRequirement::NoneNeeded;
    return out;
}

} // namespace nakcss
