/*
 * Copyright 2026 The skbudget Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "skbudget/grid.hpp"

#include <cstdint>

namespace skbudget {

/// True when the gridded distribution carries any density strictly above 0
/// (ruin is impossible without it).
bool has_positive_support(const GriddedDistribution& dist);

/// Positive root of E[exp(r Z)] = 1; exists when E[Z] < 0 and Z has positive
/// mass above 0.
struct AdjustmentCoefficient {
    double r_star = 0.0;
    double residual = 0.0; // |E[exp(r* Z)] - 1| at the returned root
};

AdjustmentCoefficient adjustment_coefficient(const GriddedDistribution& dist);

/// exp(-r* b0); upper bound on the ultimate ruin probability.
double lundberg_bound(const AdjustmentCoefficient& coef, double b0);

/// Closed-form worst-case bound sqrt(t Var(Z) + t^2 E[Z]^2) / b0 for the
/// outage probability at slot t (may exceed 1).
double bound_psi_hat(const GriddedDistribution& dist, int t, double b0);

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo estimate of E[max(S_t, 0)] / b0, the tighter worst-case bound.
/// Partial sums are drawn from the gridded distribution by inverse CDF.
MonteCarloEstimate bound_psi(const GriddedDistribution& dist, int t, double b0,
                             std::uint64_t trials, std::uint64_t seed);

} // namespace skbudget
