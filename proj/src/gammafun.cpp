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

#include "nakcss/gammafun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nakcss/error.hpp"

namespace nakcss::gammafun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
constexpr int kSeriesTerms = 100000;
constexpr int kFractionTerms = 10000;

void check_argument(double x)
{
    if (!(x >= 0.0) || std::isinf(x)) {
        throw DomainError("incomplete gamma: x must be finite and >= 0, got " +
                          std::to_string(x));
    }
}

// x^a e^{-x} / Gamma(a), the common prefactor of series and fraction.
double prefactor(double a, double x)
{
    return std::exp(a * std::log(x) - x - ln_gamma(a));
}

// P(a, x) by the power series, valid (fast) for x < a + 1.
double lower_series(double a, double x)
{
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < kSeriesTerms; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return sum * prefactor(a, x);
        }
    }
    throw NumericError("reg_lower_gamma: series did not converge");
}

// Q(a, x) by the modified Lentz continued fraction, valid for x >= a + 1.
double upper_fraction(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kFractionTerms; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            return h * prefactor(a, x);
        }
    }
    throw NumericError("reg_upper_gamma: continued fraction did not converge");
}

// Standard normal quantile, Abramowitz & Stegun 26.2.23 (|error| < 4.5e-4).
// Only used to seed Newton.
double normal_quantile(double p)
{
    const double q = p < 0.5 ? p : 1.0 - p;
    const double t = std::sqrt(-2.0 * std::log(q));
    const double z = t - (2.515517 + t * (0.802853 + t * 0.010328)) /
                             (1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308)));
    return p < 0.5 ? -z : z;
}

double initial_guess(double a, double p)
{
    if (a >= 1.0) {
        // Wilson-Hilferty: (X/a)^{1/3} is close to normal.
        const double z = normal_quantile(p);
        const double s = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a));
        if (s > 0.0) {
            return a * s * s * s;
        }
        // far left tail: P(a, x) ~ x^a / Gamma(a + 1)
        return std::exp((std::log(p) + ln_gamma(a + 1.0)) / a);
    }
    const double t = 1.0 - a * (0.253 + a * 0.12);
    if (p < t) {
        return std::pow(p / t, 1.0 / a);
    }
    return 1.0 - std::log1p(-(p - t) / (1.0 - t));
}

} // namespace

GammaShape::GammaShape(double a) : a_(a)
{
    if (!(a > 0.0) || std::isinf(a)) {
        throw DomainError("gamma shape must be finite and > 0, got " + std::to_string(a));
    }
}

double ln_gamma(double a)
{
    if (!(a > 0.0) || std::isinf(a)) {
        throw DomainError("ln_gamma: argument must be finite and > 0, got " +
                          std::to_string(a));
    }
    return std::lgamma(a);
}

double reg_lower_gamma(GammaShape a, double x)
{
    check_argument(x);
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return lower_series(a, x);
    return 1.0 - upper_fraction(a, x);
}

double reg_upper_gamma(GammaShape a, double x)
{
    check_argument(x);
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - lower_series(a, x);
    return upper_fraction(a, x);
}

double inv_reg_lower_gamma(GammaShape a, double p)
{
    if (!(p >= 0.0 && p < 1.0)) {
        throw DomainError("inv_reg_lower_gamma: p must lie in [0, 1), got " +
                          std::to_string(p));
    }
    if (p == 0.0) return 0.0;

    // Above the median the residual is formed from Q so it stays accurate as
    // p approaches 1.
    const bool upper = p > 0.5;
    const double target = upper ? 1.0 - p : p;
    const double lga = ln_gamma(a);

    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    double x = initial_guess(a, p);
    if (!(x > 0.0) || !std::isfinite(x)) x = a.value();

    for (int iter = 0; iter < kMaxIterations; ++iter) {
        // residual > 0 means x is above the root
        const double residual = upper ? target - reg_upper_gamma(a, x)
                                      : reg_lower_gamma(a, x) - target;
        if (residual == 0.0) return x;
        if (residual < 0.0) {
            lo = x;
        } else {
            hi = x;
        }

        const double density = std::exp((a - 1.0) * std::log(x) - x - lga);
        double next = x - residual / density;
        if (!std::isfinite(next) || next <= lo || next >= hi) {
            next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * x;
        }
        if (std::abs(next - x) <= 4.0 * kEps * next) return next;
        if (std::isfinite(hi) && hi - lo <= 4.0 * kEps * hi) return next;
        x = next;
    }
    throw NumericError("inv_reg_lower_gamma: no convergence within " +
                       std::to_string(kMaxIterations) + " iterations (a=" +
                       std::to_string(a.value()) + ", p=" + std::to_string(p) + ")");
}

} // namespace nakcss::gammafun
