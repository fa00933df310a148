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

#include "skbudget/montecarlo.hpp"

#include "skbudget/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace skbudget {

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SKBUDGET_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

// Runs fn(first_trial, last_trial, worker_slot) on every chunk of the trial
// range. Results must be merged associatively so the partition is invisible.
template <typename Fn>
void parallel_trials(std::uint64_t trials, int threads, Fn&& fn) {
    const int n_workers =
        static_cast<int>(std::min<std::uint64_t>(trials, static_cast<std::uint64_t>(threads)));
    if (n_workers <= 1) {
        fn(std::uint64_t{0}, trials, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    const std::uint64_t chunk = trials / static_cast<std::uint64_t>(n_workers);
    const std::uint64_t rem = trials % static_cast<std::uint64_t>(n_workers);
    std::uint64_t begin = 0;
    for (int w = 0; w < n_workers; ++w) {
        const std::uint64_t len = chunk + (static_cast<std::uint64_t>(w) < rem ? 1 : 0);
        const std::uint64_t end = begin + len;
        pool.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

} // namespace

TrajectoryStats simulate_outage(const LinkPair& link, const SchemeSpec& scheme,
                                double b0, int t_max, std::uint64_t trials,
                                std::uint64_t seed, int threads) {
    if (trials == 0) throw std::domain_error("simulate_outage: trials must be >= 1");
    if (t_max < 1) throw std::domain_error("simulate_outage: t_max must be >= 1");
    scheme.validate();
    const int n_threads = resolve_thread_count(threads);

    // ruin_counts[w][t] = trials of worker w ruined exactly at slot t.
    const std::size_t slots = static_cast<std::size_t>(t_max) + 1;
    std::vector<std::vector<std::uint64_t>> ruin_counts(
        static_cast<std::size_t>(n_threads), std::vector<std::uint64_t>(slots, 0));

    parallel_trials(trials, n_threads,
                    [&](std::uint64_t first, std::uint64_t last, int worker) {
        auto& counts = ruin_counts[static_cast<std::size_t>(worker)];
        for (std::uint64_t trial = first; trial < last; ++trial) {
            Philox rng(seed, trial);
            if (b0 <= 0.0) {
                ++counts[1];
                continue;
            }
            double b = b0;
            for (int t = 1; t <= t_max; ++t) {
                b -= sample_net_usage(link, scheme, rng);
                if (b <= 0.0) {
                    ++counts[static_cast<std::size_t>(t)];
                    break;
                }
            }
        }
    });

    std::vector<std::uint64_t> merged(slots, 0);
    for (const auto& counts : ruin_counts)
        for (std::size_t t = 0; t < slots; ++t) merged[t] += counts[t];

    TrajectoryStats stats;
    stats.trials = trials;
    stats.seed = seed;
    stats.outage_by_t.resize(slots);
    stats.outage_by_t[0].probability = b0 <= 0.0 ? 1.0 : 0.0;
    stats.outage_by_t[0].std_error = 0.0;
    std::uint64_t cum = 0;
    const double n = static_cast<double>(trials);
    for (std::size_t t = 1; t < slots; ++t) {
        cum += merged[t];
        const double p = static_cast<double>(cum) / n;
        stats.outage_by_t[t].probability = p;
        stats.outage_by_t[t].std_error = std::sqrt(p * (1.0 - p) / n);
    }
    return stats;
}

LatencySummary simulate_recharge_latency(const LinkPair& link, double b0,
                                         std::uint64_t trials,
                                         std::uint64_t seed, int threads) {
    if (trials == 0)
        throw std::domain_error("simulate_recharge_latency: trials must be >= 1");
    const int n_threads = resolve_thread_count(threads);

    // Histogram of hitting times per worker, merged exactly afterwards.
    std::vector<std::vector<std::uint64_t>> hists(
        static_cast<std::size_t>(n_threads));

    parallel_trials(trials, n_threads,
                    [&](std::uint64_t first, std::uint64_t last, int worker) {
        auto& hist = hists[static_cast<std::size_t>(worker)];
        for (std::uint64_t trial = first; trial < last; ++trial) {
            Philox rng(seed, trial);
            double sum = 0.0;
            std::uint64_t t = 0;
            do {
                sum += sample_skg_rate(link, rng);
                ++t;
            } while (sum < b0);
            if (t >= hist.size()) hist.resize(t + 1, 0);
            ++hist[t];
        }
    });

    std::size_t max_t = 0;
    for (const auto& h : hists) max_t = std::max(max_t, h.size());
    std::vector<std::uint64_t> hist(max_t, 0);
    for (const auto& h : hists)
        for (std::size_t t = 0; t < h.size(); ++t) hist[t] += h[t];

    LatencySummary out;
    out.trials = trials;
    out.seed = seed;
    long double sum_t = 0.0L;
    std::uint64_t min_t = 0, max_seen = 0;
    bool seen = false;
    for (std::size_t t = 0; t < hist.size(); ++t) {
        if (hist[t] == 0) continue;
        if (!seen) { min_t = t; seen = true; }
        max_seen = t;
        sum_t += static_cast<long double>(t) * static_cast<long double>(hist[t]);
    }
    const long double n = static_cast<long double>(trials);
    const long double mean = sum_t / n;
    long double var_acc = 0.0L;
    for (std::size_t t = 0; t < hist.size(); ++t) {
        if (hist[t] == 0) continue;
        const long double d = static_cast<long double>(t) - mean;
        var_acc += d * d * static_cast<long double>(hist[t]);
    }
    out.mean = static_cast<double>(mean);
    out.std_error = trials > 1
        ? static_cast<double>(std::sqrt(var_acc / (n - 1.0L) / n))
        : 0.0;
    out.min_slots = min_t;
    out.max_slots = max_seen;
    const auto quantile = [&](double q) -> double {
        const std::uint64_t target = static_cast<std::uint64_t>(
            std::ceil(q * static_cast<double>(trials)));
        std::uint64_t cum = 0;
        for (std::size_t t = 0; t < hist.size(); ++t) {
            cum += hist[t];
            if (cum >= target) return static_cast<double>(t);
        }
        return static_cast<double>(max_seen);
    };
    out.q10 = quantile(0.10);
    out.q50 = quantile(0.50);
    out.q90 = quantile(0.90);
    return out;
}

} // namespace skbudget
