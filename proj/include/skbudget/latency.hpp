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
#include "skbudget/finite_time.hpp"
#include "skbudget/montecarlo.hpp"

namespace skbudget {

/// Mean recharge latency for a fixed target budget. One recharge slot
/// produces one channel realization; in the alternating scheme a slot holds
/// two realizations, so the slot figure is half the realization figure.
struct AverageLatency {
    double realizations = 0.0; // b0 / E[theta]
    double slots = 0.0;        // realizations / 2 (alternating-scheme slots)
};

struct LatencyReport {
    double required_budget = 0.0;
    double mean_latency_realizations = 0.0;
    double mean_latency_slots = 0.0;
    double epsilon = 0.0;
    int tau = 0;
};

/// Smallest budget whose outage probability at slot tau is at most epsilon,
/// refined by linear interpolation between bracketing grid points. Throws
/// std::out_of_range when epsilon is unreachable on the solved grid.
double required_budget(const SurvivalSurface& surface, int tau, double epsilon);

/// Drift formula b0 / E[theta] (and its alternating-scheme half).
/// The Monte Carlo mean exceeds this by the overshoot of the final slot;
/// latency_mc reports that residual instead of correcting for it.
AverageLatency average_latency(const LinkPair& link, double b0);

LatencyReport latency_report(const SurvivalSurface& surface,
                             const LinkPair& link, int tau, double epsilon);

struct LatencyMcResult {
    LatencySummary summary;
    double drift_formula = 0.0;       // b0 / E[theta]
    double bias_vs_formula = 0.0;     // mean - drift_formula
    bool bias_significant = false;    // |bias| > 3 * std_error
};

/// Simulates the recharge hitting time and compares it with the drift
/// formula, flagging any systematic residual.
LatencyMcResult latency_mc(const LinkPair& link, double b0,
                           std::uint64_t trials, std::uint64_t seed,
                           int threads = 0);

} // namespace skbudget
