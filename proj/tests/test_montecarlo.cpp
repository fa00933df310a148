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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skbudget/montecarlo.hpp"
#include "skbudget/net_usage.hpp"

#include <cmath>

using namespace skbudget;

namespace {

LinkPair paper_link() {
    return LinkPair{ChannelModel::from_db(ChannelFamily::Exponential, 20.0),
                    ChannelModel::from_db(ChannelFamily::Exponential, 10.0)};
}

} // namespace

TEST_CASE("outage statistics are bit-identical across thread counts") {
    const auto link = paper_link();
    const SchemeSpec scheme = SchemeSpec::random_tx(0.35);
    const auto one = simulate_outage(link, scheme, 20.0, 40, 100000, 99, 1);
    const auto two = simulate_outage(link, scheme, 20.0, 40, 100000, 99, 2);
    const auto four = simulate_outage(link, scheme, 20.0, 40, 100000, 99, 4);
    REQUIRE(one.outage_by_t.size() == four.outage_by_t.size());
    for (std::size_t t = 0; t < one.outage_by_t.size(); ++t) {
        CHECK(one.outage_by_t[t].probability == four.outage_by_t[t].probability);
        CHECK(one.outage_by_t[t].probability == two.outage_by_t[t].probability);
        CHECK(one.outage_by_t[t].std_error == four.outage_by_t[t].std_error);
    }
}

TEST_CASE("latency statistics are bit-identical across thread counts") {
    const auto link = paper_link();
    const auto one = simulate_recharge_latency(link, 19.9, 50000, 4, 1);
    const auto four = simulate_recharge_latency(link, 19.9, 50000, 4, 4);
    CHECK(one.mean == four.mean);
    CHECK(one.std_error == four.std_error);
    CHECK(one.q10 == four.q10);
    CHECK(one.q50 == four.q50);
    CHECK(one.q90 == four.q90);
    CHECK(one.min_slots == four.min_slots);
    CHECK(one.max_slots == four.max_slots);
}

TEST_CASE("zero budget is ruined immediately") {
    const auto stats = simulate_outage(paper_link(), SchemeSpec::deterministic(),
                                       0.0, 5, 1000, 1);
    CHECK(stats.outage_by_t[0].probability == 1.0);
    CHECK(stats.outage_by_t[1].probability == 1.0);
    CHECK(stats.outage_by_t[5].probability == 1.0);
}

TEST_CASE("outage estimates are monotone in t with binomial errors") {
    const auto stats = simulate_outage(paper_link(), SchemeSpec::deterministic(),
                                       20.0, 30, 50000, 12);
    double prev = 0.0;
    for (std::size_t t = 1; t < stats.outage_by_t.size(); ++t) {
        const auto& pt = stats.outage_by_t[t];
        CHECK(pt.probability >= prev);
        CHECK(pt.std_error ==
              doctest::Approx(std::sqrt(pt.probability * (1.0 - pt.probability) /
                                        50000.0)));
        prev = pt.probability;
    }
}

TEST_CASE("degenerate transmission probabilities never mix directions") {
    const auto link = paper_link();
    // p = 1: every slot spends, so the budget can only shrink.
    const auto spend = simulate_outage(link, SchemeSpec::random_tx(1.0), 3.0,
                                       40, 20000, 3);
    CHECK(spend.outage_by_t[40].probability == 1.0);
    // p = 0: every slot generates, so a positive budget never ruins.
    const auto gain = simulate_outage(link, SchemeSpec::random_tx(0.0), 1.0,
                                      40, 20000, 3);
    CHECK(gain.outage_by_t[40].probability == 0.0);
}

TEST_CASE("reference outage value from simulation") {
    const auto stats = simulate_outage(paper_link(), SchemeSpec::deterministic(),
                                       50.0, 15, 200000, 2024);
    const auto& pt = stats.outage_by_t[15];
    CHECK(std::abs(pt.probability - 0.11) < 0.01);
}

TEST_CASE("recharge latency sanity") {
    const auto link = paper_link();
    const auto lat = simulate_recharge_latency(link, 19.9, 100000, 21);
    CHECK(lat.min_slots >= 1);
    CHECK(lat.q10 <= lat.mean);
    CHECK(lat.mean <= lat.q90);
    CHECK(lat.q10 <= lat.q50);
    CHECK(lat.q50 <= lat.q90);

    // Tiny target: a single slot always suffices.
    const auto tiny = simulate_recharge_latency(link, 1e-9, 10000, 8);
    CHECK(tiny.mean == 1.0);
    CHECK(tiny.min_slots == 1);
    CHECK(tiny.max_slots == 1);
}

TEST_CASE("latency follows the stopped-sum identity") {
    // Wald: E[sum at T] = E[T] E[theta], and the stopped sum is the target
    // plus the final-slot overshoot (about E[theta^2] / (2 E[theta]) for
    // large targets). Doubling the target therefore scales the mean latency
    // by (2 b0 + overshoot) / (b0 + overshoot), slightly below 2.
    const auto link = paper_link();
    const double e_theta = rate_moment(RateKind::SKG, link, 1).value;
    const double e_theta2 = rate_moment(RateKind::SKG, link, 2).value;
    const double overshoot = e_theta2 / (2.0 * e_theta);

    const auto lat20 = simulate_recharge_latency(link, 20.0, 200000, 31);
    const auto lat40 = simulate_recharge_latency(link, 40.0, 200000, 32);
    const double predicted20 = (20.0 + overshoot) / e_theta;
    const double predicted40 = (40.0 + overshoot) / e_theta;
    CHECK(std::abs(lat20.mean - predicted20) < 3.0 * lat20.std_error + 0.02);
    CHECK(std::abs(lat40.mean - predicted40) < 3.0 * lat40.std_error + 0.02);

    const double ratio = lat40.mean / lat20.mean;
    const double predicted_ratio = predicted40 / predicted20;
    CHECK(ratio == doctest::Approx(predicted_ratio).epsilon(0.01));
    CHECK(ratio > 1.8);
    CHECK(ratio < 2.0);
}
