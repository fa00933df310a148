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
#include "skbudget/net_usage.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace skbudget {

/// Parsed experiment description. Sections and keys are fixed; unknown keys
/// are rejected with the offending line.
struct ExperimentConfig {
    // [link]
    double main_snr_db = 20.0;
    double eve_snr_db = 10.0;
    std::optional<double> tx_snr_db{}; // defaults to the main channel

    // [scheme]
    SchemeKind scheme_kind = SchemeKind::Deterministic;
    double tx_prob = 0.0;

    // [grid]
    double step = 0.01;
    double b_min = 0.0;
    double b_max = 60.0;
    int t_max = 30;

    // [targets]
    std::vector<double> budgets;
    std::vector<int> taus;
    std::vector<double> epsilons;
    std::vector<double> tx_probs;

    // [mc]
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    int horizon = 150;

    // [ultimate]
    std::size_t nodes = 0; // 0 = automatic
    double s_max = 0.0;    // 0 = automatic (Lundberg-driven)

    // [output]
    std::string out_path;

    LinkPair link() const;
    SchemeSpec scheme() const;
    GridSpec grid() const;

    /// Applies "section.key=value"; same validation as the file parser.
    void set(const std::string& dotted_key, const std::string& value);

    void validate() const;
};

ExperimentConfig load_config(const std::string& path);

/// Comma/whitespace separated numbers, or linspace(a,b,n) / logspace(a,b,n).
std::vector<double> parse_double_list(const std::string& text);

/// Locale-independent shortest-round-trip formatting for CSV output.
std::string format_number(double v);

} // namespace skbudget
