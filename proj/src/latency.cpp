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

#include "skbudget/latency.hpp"

#include <cmath>
#include <stdexcept>

namespace skbudget {

double required_budget(const SurvivalSurface& surface, int tau,
                       double epsilon) {
    if (tau < 0 || tau > surface.t_max())
        throw std::out_of_range("required_budget: tau outside solved horizon");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("required_budget: epsilon must be in (0, 1)");
    const auto& row = surface.row(tau);
    const GridSpec& grid = surface.grid();
    double prev_psi = 1.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        const double psi = 1.0 - row[i];
        if (psi <= epsilon) {
            const double b = grid.b_at(i);
            if (i == 0 || prev_psi <= epsilon) return std::max(b, 0.0);
            const double frac = (prev_psi - epsilon) / (prev_psi - psi);
            return std::max(b - grid.step + frac * grid.step, 0.0);
        }
        prev_psi = psi;
    }
    throw std::out_of_range(
        "required_budget: epsilon unreachable on this grid; widen b_max");
}

AverageLatency average_latency(const LinkPair& link, double b0) {
    if (b0 < 0.0) throw std::domain_error("average_latency: b0 must be >= 0");
    const double e_theta = rate_moment(RateKind::SKG, link, 1).value;
    AverageLatency avg;
    avg.realizations = b0 / e_theta;
    avg.slots = 0.5 * avg.realizations;
    return avg;
}

LatencyReport latency_report(const SurvivalSurface& surface,
                             const LinkPair& link, int tau, double epsilon) {
    LatencyReport report;
    report.tau = tau;
    report.epsilon = epsilon;
    report.required_budget = required_budget(surface, tau, epsilon);
    const AverageLatency avg = average_latency(link, report.required_budget);
    report.mean_latency_realizations = avg.realizations;
    report.mean_latency_slots = avg.slots;
    return report;
}

LatencyMcResult latency_mc(const LinkPair& link, double b0,
                           std::uint64_t trials, std::uint64_t seed,
                           int threads) {
    if (trials == 0) throw std::domain_error("latency_mc: trials must be >= 1");
    LatencyMcResult res;
    res.summary = simulate_recharge_latency(link, b0, trials, seed, threads);
    res.drift_formula = average_latency(link, std::max(b0, 0.0)).realizations;
    res.bias_vs_formula = res.summary.mean - res.drift_formula;
    res.bias_significant =
        std::abs(res.bias_vs_formula) > 3.0 * res.summary.std_error;
    return res;
}

} // namespace skbudget
