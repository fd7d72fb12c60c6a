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

#include <cmath>
#include <random>

#include "doctest.h"
#include "nakcss/analysis.hpp"
#include "nakcss/error.hpp"
#include "nakcss/simulate.hpp"

using namespace nakcss;

namespace {

SystemConfig reference(int n_antennas = 2, double d2 = 0.8, double alpha = 0.5)
{
    SystemConfig c;
    c.pp_over_sigma2 = 100.0;
    c.ps_over_sigma2 = 1000.0;
    c.m = 0.7;
    c.n_antennas = n_antennas;
    c.d2 = d2;
    c.alpha = alpha;
    return c;
}

ChannelRealization flat(int n, double g)
{
    ChannelRealization ch;
    ch.gamma1 = ch.gamma3 = ch.gamma4 = ch.gamma5 = g;
    ch.gamma2.assign(static_cast<std::size_t>(n), g);
    return ch;
}

} // namespace

TEST_CASE("rates_for_realization")
{
    SystemConfig c = reference();
    RateTuple r = rates_for_realization(c, flat(2, 0.0));
    CHECK(r.r_st_link == 0.0);
    CHECK(r.r_p == 0.0);
    CHECK(r.r_pd_half == 0.0);
    CHECK(r.r_sd == 0.0);
    CHECK(r.r_s == 0.0);

    ChannelRealization ch = flat(2, 0.3);
    ch.gamma2 = {0.1, 0.25};
    r = rates_for_realization(c, ch);
    CHECK(r.r_st_link == doctest::Approx(0.5 * std::log2(1.0 + 100.0 * 0.35)));
    CHECK(r.r_pd_half == doctest::Approx(0.5 * std::log2(31.0)));
    CHECK(r.r_p == doctest::Approx(0.5 * std::log2(31.0 + 0.5 * 300.0 / (0.5 * 300.0 + 1.0))));
    CHECK(r.r_sd == doctest::Approx(0.5 * std::log2(31.0)));
    CHECK(r.r_s == doctest::Approx(0.5 * std::log2(1.0 + 0.5 * 1000.0 * 0.3)));

    c.alpha = 0.0;  // no relayed copy
    r = rates_for_realization(c, ch);
    CHECK(r.r_p == r.r_pd_half);

    c.alpha = 0.6;  // strong ST-PR link saturates the relayed SNR at alpha / (1 - alpha)
    ch.gamma3 = 1e200;
    r = rates_for_realization(c, ch);
    CHECK(r.r_p == doctest::Approx(0.5 * std::log2(31.0 + 1.5)).epsilon(1e-14));
}

TEST_CASE("outage events")
{
    const SystemConfig c = reference(1);
    // rate exactly on target counts as outage: 1/2 log2(1 + 3) = 1
    ChannelRealization ch = flat(1, 0.03);
    CHECK(direct_outage_event(c, flat(1, 0.01)));
    CHECK_FALSE(direct_outage_event(c, flat(1, 0.011)));
    ch.gamma3 = 0.0;
    CHECK(primary_outage_event(c, ch));  // half-rate direct only reaches the target
    ch.gamma3 = 1.0;
    CHECK(primary_outage_event(c, ch));  // ST sits exactly on its threshold: silent
    ch.gamma2 = {0.0301};
    CHECK_FALSE(primary_outage_event(c, ch));
}

TEST_CASE("property: when ST fails to decode, phase-2 gains are never consulted")
{
    SystemConfig c = reference(2, 2.5, 0.4);
    const Topology topo = derive_topology(c);
    ChannelSampler sampler(c, topo);
    Rng rng(5);
    std::uniform_real_distribution<double> u(0.0, 1e4);
    ChannelRealization ch;
    int silent = 0;
    for (int i = 0; i < 100'000; ++i) {
        sampler.draw(rng, ch);
        if (rates_for_realization(c, ch).r_st_link > c.r_pt) continue;
        ++silent;
        const bool p = primary_outage_event(c, ch);
        const bool s = secondary_outage_event(c, ch);
        CHECK(s);
        ch.gamma3 = u(rng);
        ch.gamma4 = u(rng);
        CHECK(primary_outage_event(c, ch) == p);
        CHECK(secondary_outage_event(c, ch) == s);
    }
    CHECK(silent > 100);
}

TEST_CASE("zero secondary target: outage reduces to the decode events")
{
    SystemConfig c = reference(2, 1.5, 0.5);
    c.r_st = 0.0;
    const Topology topo = derive_topology(c);
    ChannelSampler sampler(c, topo);
    Rng rng(8);
    ChannelRealization ch;
    for (int i = 0; i < 20'000; ++i) {
        sampler.draw(rng, ch);
        const RateTuple r = rates_for_realization(c, ch);
        CHECK(secondary_outage_event(c, ch) == !(r.r_st_link > c.r_pt && r.r_sd > c.r_pt));
    }
}

TEST_CASE("make_estimate")
{
    const OutageEstimate e = make_estimate(25, 100, 3);
    CHECK(e.p_hat == 0.25);
    CHECK(e.std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 100.0)));
    CHECK(e.seed == 3);
    CHECK(make_estimate(0, 10, 1).std_error == 0.0);
}

TEST_CASE("simulation rejects zero trials")
{
    CHECK_THROWS_AS(simulate_primary(reference(), {0, 1, 1}), DomainError);
}

TEST_CASE("simulate_direct matches the exponential CDF at m = 1")
{
    SystemConfig c = reference();
    c.m = 1.0;
    const OutageEstimate e = simulate_direct(c, {1'000'000, 17, 0});
    CHECK(std::abs(e.p_hat - -std::expm1(-0.01)) <= 3.0 * e.std_error);

    c.m = 0.7;
    const OutageEstimate f = simulate_direct(c, {1'000'000, 18, 0});
    CHECK(std::abs(f.p_hat - analyze(c).p_d) <= 3.0 * f.std_error);

    c.pp_over_sigma2 = 1e12;
    CHECK(simulate_direct(c, {100'000, 19, 0}).p_hat == 0.0);
}

TEST_CASE("simulate_primary")
{
    SystemConfig c = reference(2, 0.8, 0.8);
    const OutageEstimate e = simulate_primary(c, {1'000'000, 21, 0});
    CHECK(std::abs(e.p_hat - analyze(c).f_op) <= std::max(0.01, 4.0 * e.std_error));

    SystemConfig loud = c;
    loud.pp_over_sigma2 = 1e12;
    CHECK(simulate_primary(loud, {100'000, 22, 0}).p_hat == 0.0);
}

TEST_CASE("at the critical radius the cooperative and direct outages coincide")
{
    // The radius comes from the P_s >> sigma^2 closed form, so the identity is
    // checked with a very strong secondary transmitter.
    for (int n : {2, 4}) {
        SystemConfig c = reference(n, 0.8, 0.8);
        c.ps_over_sigma2 = 1e7;
        c.d2 = critical_omega2(c, derive_topology(c), derive_thresholds(c)).d2_tilde;
        const SimulationResult r = simulate_all(c, {1'000'000, 23, 0});
        const double se = std::hypot(r.primary.std_error, r.direct.std_error);
        CHECK(std::abs(r.primary.p_hat - r.direct.p_hat) <= 3.0 * se);

        // At 30 dB the weak ST-PR link of a distant relay falls short of the
        // saturated relayed SNR and cooperation is measurably worse.
        c.ps_over_sigma2 = 1000.0;
        const SimulationResult weak = simulate_all(c, {1'000'000, 23, 0});
        CHECK(weak.primary.p_hat - weak.direct.p_hat > 3.0 * se);
    }
}

TEST_CASE("simulate_secondary")
{
    const SystemConfig c = reference(2, 0.8, 0.5);
    const OutageEstimate e = simulate_secondary(c, {1'000'000, 31, 0});
    CHECK(std::abs(e.p_hat - analyze(c).f_os) <= 3.0 * e.std_error);

    SystemConfig nearly_all_relay = c;
    nearly_all_relay.alpha = 0.999999;
    CHECK(simulate_secondary(nearly_all_relay, {100'000, 32, 0}).p_hat > 0.999);
}

TEST_CASE("error shrinks like 1/sqrt(trials)")
{
    const SystemConfig c = reference(4, 1.5, 0.5);
    const double exact = analyze(c).f_os;
    const OutageEstimate small = simulate_secondary(c, {10'000, 41, 0});
    const OutageEstimate large = simulate_secondary(c, {1'000'000, 41, 0});
    CHECK(std::abs(small.p_hat - exact) <= 3.0 * small.std_error);
    CHECK(std::abs(large.p_hat - exact) <= 3.0 * large.std_error);
    CHECK(small.std_error / large.std_error == doctest::Approx(10.0).epsilon(0.1));
}

TEST_CASE("determinism across runs and worker counts")
{
    const SystemConfig c = reference(4, 1.5, 0.3);
    const std::uint64_t trials = 100'000 + 123;  // last chunk is partial
    const SimulationResult one = simulate_all(c, {trials, 77, 1});
    for (unsigned w : {1u, 2u, 3u, 4u, 8u, 16u}) {
        const SimulationResult r = simulate_all(c, {trials, 77, w});
        CHECK(r.primary.failures == one.primary.failures);
        CHECK(r.secondary.failures == one.secondary.failures);
        CHECK(r.direct.failures == one.direct.failures);
        CHECK(r.primary.p_hat == one.primary.p_hat);
    }
    CHECK(simulate_all(c, {trials, 78, 1}).secondary.failures != one.secondary.failures);
}

TEST_CASE("chunk generators are distinct substreams")
{
    Rng a = chunk_generator(1, 0), b = chunk_generator(1, 1), c = chunk_generator(2, 0);
    const auto x = a(), y = b(), z = c();
    CHECK(x != y);
    CHECK(x != z);
    Rng again = chunk_generator(1, 0);
    CHECK(again() == x);
}
