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

// Gamma-function kernel used by the outage expressions: log-gamma, the
// regularized incomplete gamma pair P(a, x) / Q(a, x), and the quantile
// P^{-1}(a, p). P(a, .) is the CDF of a unit-scale gamma(a) variate, which is
// how every Nakagami-m power-gain probability is expressed.
//
// All functions are pure and thread-safe.

namespace nakcss::gammafun {

/// Validated gamma shape parameter (a > 0, finite).
class GammaShape {
public:
    GammaShape(double a);  // NOLINT: implicit so plain doubles can be passed

    double value() const noexcept { return a_; }
    operator double() const noexcept { return a_; }

private:
    double a_;
};

/// ln Gamma(a) for a > 0.
double ln_gamma(double a);

/// P(a, x) = gamma(a, x) / Gamma(a), x >= 0.
double reg_lower_gamma(GammaShape a, double x);

/// Q(a, x) = 1 - P(a, x), evaluated directly (no cancellation for large x).
double reg_upper_gamma(GammaShape a, double x);

/// Unique x >= 0 with P(a, x) = p, for p in [0, 1). Throws NumericError if
/// the root finder exhausts its iteration budget.
double inv_reg_lower_gamma(GammaShape a, double p);

/// Iteration budget of the inverse's safeguarded Newton solve.
inline constexpr int kMaxIterations = 200;

} // namespace nakcss::gammafun
