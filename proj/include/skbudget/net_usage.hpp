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

#include "skbudget/channel.hpp"
#include "skbudget/grid.hpp"
#include "skbudget/rng.hpp"

#include <optional>

namespace skbudget {

enum class SchemeKind { Deterministic, RandomTx };

/// Scheduling scheme for the active state: either alternating SKG/TX blocks
/// in every slot, or a Bernoulli(p) choice between a TX slot and an SKG slot.
struct SchemeSpec {
    SchemeKind kind = SchemeKind::Deterministic;
    double tx_prob = 0.0; // RandomTx only

    static SchemeSpec deterministic() { return {SchemeKind::Deterministic, 0.0}; }
    static SchemeSpec random_tx(double p) { return {SchemeKind::RandomTx, p}; }

    void validate() const;
};

struct NetUsageGridOptions {
    double step = 0.01;
    double tail_mass = 1e-9; // support truncated at this quantile
    std::optional<double> z_min{};
    std::optional<double> z_max{};

    static constexpr double kTruncTol = 1e-7;
};

/// Per-slot net usage Z as a gridded distribution.
/// Deterministic scheme: Z = xi - theta, density by FFT convolution.
/// RandomTx scheme: pointwise mixture (1-p) * f_theta(-z) + p * f_xi(z).
GriddedDistribution build_net_usage(const LinkPair& link,
                                    const SchemeSpec& scheme,
                                    const NetUsageGridOptions& opts = {});

double net_usage_mean(const GriddedDistribution& dist);
double net_usage_variance(const GriddedDistribution& dist);

/// E[theta] / (E[theta] + E[xi]); transmission probabilities below this keep
/// the budget drifting upward on average.
double critical_tx_prob(const LinkPair& link);

/// One draw of Z. RandomTx draws the Bernoulli first, then exactly one rate.
double sample_net_usage(const LinkPair& link, const SchemeSpec& scheme,
                        Philox& rng);

} // namespace skbudget
