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

#include "skbudget/ultimate_ruin.hpp"

#include "skbudget/errors.hpp"
#include "skbudget/linalg.hpp"
#include "skbudget/montecarlo.hpp"
#include "skbudget/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace skbudget {

namespace {

constexpr double kPsiTailTol = 1e-10; // psi at the domain truncation point
constexpr double kDefaultPanelWidth = 2.0;
constexpr int kPointsPerPanel = 8;

} // namespace

double UltimateRuinCurve::kernel_sum(double b, double& interp_num) const {
    // Returns sum_j w_j f(b - s_j); accumulates sum_j w_j f(b - s_j) psi_j
    // into interp_num. Only nodes inside the kernel support contribute.
    double acc = 0.0;
    interp_num = 0.0;
    const double lo = b - dist_.z_max;
    const double hi = b - dist_.z_min;
    const auto begin = std::lower_bound(nodes_.begin(), nodes_.end(), lo);
    for (auto it = begin; it != nodes_.end() && *it <= hi; ++it) {
        const std::size_t j = static_cast<std::size_t>(it - nodes_.begin());
        const double k = weights_[j] * dist_.pdf_at(b - nodes_[j]);
        acc += k;
        interp_num += k * psi_[j];
    }
    return acc;
}

double UltimateRuinCurve::evaluate(double b) const {
    if (b <= 0.0) return 1.0;
    switch (regime_) {
        case Regime::CertainRuin: return 1.0;
        case Regime::NoRuin: return 0.0;
        case Regime::Solved: break;
    }
    // Nystrom interpolant of the kink-subtracted equation:
    //   psi(b) [1 + sum_j K_j(b) - dF(b)] = rhs(b) + sum_j K_j(b) psi_j
    double num = 0.0;
    const double ksum = kernel_sum(b, num);
    const double df = dist_.cdf_at(b) - dist_.cdf_at(b - s_max_);
    const double rhs = 1.0 - dist_.cdf_at(b);
    const double denom = 1.0 + ksum - df;
    const double psi = (rhs + num) / denom;
    return std::clamp(psi, 0.0, 1.0);
}

UltimateRuinCurve solve_ultimate_ruin(const GriddedDistribution& dist,
                                      std::size_t nodes, double s_max) {
    dist.validate();
    UltimateRuinCurve curve;
    curve.dist_ = dist;

    const double mean = dist.mean();
    if (mean >= 0.0) {
        curve.regime_ = UltimateRuinCurve::Regime::CertainRuin;
        return curve;
    }
    if (!has_positive_support(dist)) {
        curve.regime_ = UltimateRuinCurve::Regime::NoRuin;
        return curve;
    }

    const AdjustmentCoefficient coef = adjustment_coefficient(dist);
    curve.r_star_ = coef.r_star;
    if (s_max <= 0.0) s_max = -std::log(kPsiTailTol) / coef.r_star;
    curve.s_max_ = s_max;
    curve.regime_ = UltimateRuinCurve::Regime::Solved;

    // Panels: boundary at the mode of the positive mixture component, then
    // uniform up to s_max.
    double mode_pos = 0.0;
    double best_pdf = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist.z_at(i) > 0.0 && dist.pdf[i] > best_pdf) {
            best_pdf = dist.pdf[i];
            mode_pos = dist.z_at(i);
        }
    }
    std::size_t panels;
    if (nodes == 0) {
        panels = static_cast<std::size_t>(std::ceil(s_max / kDefaultPanelWidth));
    } else {
        panels = std::max<std::size_t>(2, (nodes + kPointsPerPanel - 1) / kPointsPerPanel);
    }
    panels = std::max<std::size_t>(panels, 2);
    std::vector<double> edges;
    edges.reserve(panels + 2);
    edges.push_back(0.0);
    if (mode_pos > 1e-6 && mode_pos < s_max - 1e-6) edges.push_back(mode_pos);
    const double start = edges.back();
    const std::size_t uniform_panels = panels - (edges.size() - 1);
    for (std::size_t p = 1; p <= uniform_panels; ++p)
        edges.push_back(start + (s_max - start) * static_cast<double>(p) /
                                    static_cast<double>(uniform_panels));
    const GaussLegendreRule rule = composite_gauss_legendre(edges, kPointsPerPanel);
    curve.nodes_ = rule.nodes;
    curve.weights_ = rule.weights;
    const std::size_t n = curve.nodes_.size();

    // Index bandwidth of the kernel: nodes within support distance.
    const double reach = std::max(std::abs(dist.z_min), std::abs(dist.z_max));
    std::size_t band = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const auto lo = std::lower_bound(curve.nodes_.begin(), curve.nodes_.end(),
                                         curve.nodes_[i] - reach);
        const auto hi = std::upper_bound(curve.nodes_.begin(), curve.nodes_.end(),
                                         curve.nodes_[i] + reach);
        band = std::max(band, static_cast<std::size_t>(hi - lo));
    }

    BandedMatrix a(n, band, band);
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double b = curve.nodes_[i];
        double diag_extra = 0.0;
        const double j_lo = b - dist.z_max;
        const double j_hi = b - dist.z_min;
        const auto begin =
            std::lower_bound(curve.nodes_.begin(), curve.nodes_.end(), j_lo);
        for (auto it = begin; it != curve.nodes_.end() && *it <= j_hi; ++it) {
            const std::size_t j = static_cast<std::size_t>(it - curve.nodes_.begin());
            const double k = curve.weights_[j] * dist.pdf_at(b - curve.nodes_[j]);
            if (k != 0.0) a.at(i, j) -= k;
            diag_extra += k;
        }
        const double df = dist.cdf_at(b) - dist.cdf_at(b - s_max);
        a.at(i, i) += 1.0 + diag_extra - df;
        rhs[i] = 1.0 - dist.cdf_at(b);
    }

    const BandedSolveResult solve = banded_solve(a, rhs);
    curve.condition_estimate_ = solve.condition_estimate;
    if (solve.condition_estimate > 1e12) {
        std::ostringstream msg;
        msg << "solve_ultimate_ruin: system ill-conditioned (estimate "
            << solve.condition_estimate << ")";
        throw NumericalError(msg.str());
    }

    curve.psi_ = std::move(rhs);
    double clamp = 0.0;
    for (double& v : curve.psi_) {
        if (v < 0.0) { clamp = std::max(clamp, -v); v = 0.0; }
        if (v > 1.0) { clamp = std::max(clamp, v - 1.0); v = 1.0; }
    }
    curve.clamp_magnitude_ = clamp;
    return curve;
}

MonteCarloEstimate ultimate_ruin_mc_estimate(const LinkPair& link,
                                             const SchemeSpec& scheme,
                                             double b0, int horizon,
                                             std::uint64_t trials,
                                             std::uint64_t seed, int threads) {
    const TrajectoryStats stats =
        simulate_outage(link, scheme, b0, horizon, trials, seed, threads);
    const OutagePoint& p = stats.outage_by_t.back();
    return MonteCarloEstimate{p.probability, p.std_error};
}

} // namespace skbudget
