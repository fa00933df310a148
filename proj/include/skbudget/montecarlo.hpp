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
#include "skbudget/net_usage.hpp"

#include <cstdint>
#include <vector>

namespace skbudget {

struct OutagePoint {
    double probability = 0.0;
    double std_error = 0.0; // binomial, sqrt(p(1-p)/trials)
};

/// Monte Carlo estimates of the outage probability per slot. Every trial has
/// its own counter-based substream, so the results are bit-identical for any
/// thread count.
struct TrajectoryStats {
    std::vector<OutagePoint> outage_by_t; // index t = 0..t_max
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

struct LatencySummary {
    double mean = 0.0;
    double std_error = 0.0;
    double q10 = 0.0;
    double q50 = 0.0;
    double q90 = 0.0;
    std::uint64_t min_slots = 0;
    std::uint64_t max_slots = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

/// Thread count: `requested` if positive, else the SKBUDGET_THREADS
/// environment variable, else the hardware concurrency.
int resolve_thread_count(int requested);

/// Evolves the budget process for `trials` independent trajectories and
/// records the first slot at which the budget drops to or below zero.
/// A non-positive starting budget counts as ruin in slot 1 (and at t = 0).
TrajectoryStats simulate_outage(const LinkPair& link, const SchemeSpec& scheme,
                                double b0, int t_max, std::uint64_t trials,
                                std::uint64_t seed, int threads = 0);

/// Number of SKG-only slots until the accumulated key bits reach b0;
/// always at least 1.
LatencySummary simulate_recharge_latency(const LinkPair& link, double b0,
                                         std::uint64_t trials,
                                         std::uint64_t seed, int threads = 0);

} // namespace skbudget
