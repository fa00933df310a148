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

#include "skbudget/bounds.hpp"
#include "skbudget/grid.hpp"
#include "skbudget/net_usage.hpp"

#include <cstdint>
#include <vector>

namespace skbudget {

/// Infinite-horizon ruin probability of the random-transmission scheme,
/// solved from the renewal integral equation
///   psi(b) = (1 - F_Z(b)) + integral_0^inf psi(s) f_Z(b - s) ds
/// by Nystrom collocation on composite Gauss-Legendre panels.
class UltimateRuinCurve {
public:
    enum class Regime {
        Solved,      // E[Z] < 0, equation solved numerically
        CertainRuin, // E[Z] >= 0: ruin is certain, psi == 1
        NoRuin,      // Z <= 0 a.s.: the budget never shrinks, psi == 0
    };

    Regime regime() const { return regime_; }
    double s_max() const { return s_max_; }
    double r_star() const { return r_star_; }
    std::size_t node_count() const { return nodes_.size(); }
    double clamp_magnitude() const { return clamp_magnitude_; }
    double condition_estimate() const { return condition_estimate_; }

    /// psi(b); 1 for b <= 0 in every regime.
    double evaluate(double b) const;

    friend UltimateRuinCurve solve_ultimate_ruin(const GriddedDistribution&,
                                                 std::size_t, double);

private:
    Regime regime_ = Regime::CertainRuin;
    double s_max_ = 0.0;
    double r_star_ = 0.0;
    double clamp_magnitude_ = 0.0;
    double condition_estimate_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> psi_;
    GriddedDistribution dist_;

    double kernel_sum(double b, double& interp_num) const;
};

/// nodes = 0 picks roughly 8 nodes per 2-bit panel; s_max = 0 derives the
/// domain from the Lundberg bound so that psi(s_max) <= 1e-10.
UltimateRuinCurve solve_ultimate_ruin(const GriddedDistribution& dist,
                                      std::size_t nodes = 0,
                                      double s_max = 0.0);

/// Finite-horizon Monte Carlo proxy for the ultimate ruin probability
/// (lower-biased: ruin after `horizon` is not observed).
MonteCarloEstimate ultimate_ruin_mc_estimate(const LinkPair& link,
                                             const SchemeSpec& scheme,
                                             double b0, int horizon,
                                             std::uint64_t trials,
                                             std::uint64_t seed,
                                             int threads = 0);

} // namespace skbudget
