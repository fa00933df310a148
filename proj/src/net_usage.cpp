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

#include "skbudget/net_usage.hpp"

#include "skbudget/errors.hpp"
#include "skbudget/fft.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace skbudget {

namespace {

// One-sided density limits at the support edge have a jump to zero; sampling
// the node at half the limit keeps trapezoid sums consistent with the
// integral (t slightly above 0 stands in for the 0+ limit).
constexpr double kEdgeEps = 1e-12;

double snap_up(double x, double step) {
    return std::ceil(x / step - 1e-9) * step;
}

} // namespace

void SchemeSpec::validate() const {
    if (kind == SchemeKind::RandomTx && !(tx_prob >= 0.0 && tx_prob <= 1.0))
        throw std::domain_error("scheme: tx_prob must be in [0, 1]");
}

GriddedDistribution build_net_usage(const LinkPair& link,
                                    const SchemeSpec& scheme,
                                    const NetUsageGridOptions& opts) {
    scheme.validate();
    if (!(opts.step > 0.0))
        throw std::domain_error("build_net_usage: step must be positive");
    const double step = opts.step;

    const double q_theta = rate_upper_quantile(RateKind::SKG, link, opts.tail_mass);
    const double q_xi = rate_upper_quantile(RateKind::TX, link, opts.tail_mass);
    const double z_lo = opts.z_min ? *opts.z_min : -snap_up(q_theta, step);
    const double z_hi = opts.z_max ? *opts.z_max : snap_up(q_xi, step);
    if (!(z_lo < 0.0 && z_hi > 0.0))
        throw std::domain_error("build_net_usage: grid must straddle 0");
    if (std::abs(z_lo / step - std::round(z_lo / step)) > 1e-6 ||
        std::abs(z_hi / step - std::round(z_hi / step)) > 1e-6)
        throw ConfigError("build_net_usage: grid bounds must be multiples of step");

    // Truncated tail mass of each component, checked against the marginals.
    const double tail_theta = 1.0 - skg_rate_cdf(link, -z_lo);
    const double tail_xi = 1.0 - tx_rate_cdf(link.tx_channel(), z_hi);
    if (tail_theta > NetUsageGridOptions::kTruncTol) {
        std::ostringstream msg;
        msg << "build_net_usage: grid truncates the SKG-rate tail (mass "
            << tail_theta << " beyond " << -z_lo << " bit)";
        throw TruncationError(msg.str());
    }
    if (tail_xi > NetUsageGridOptions::kTruncTol) {
        std::ostringstream msg;
        msg << "build_net_usage: grid truncates the TX-rate tail (mass "
            << tail_xi << " beyond " << z_hi << " bit)";
        throw TruncationError(msg.str());
    }

    const std::size_t n_neg = static_cast<std::size_t>(std::llround(-z_lo / step));
    const std::size_t n_pos = static_cast<std::size_t>(std::llround(z_hi / step));
    const std::size_t n = n_neg + n_pos + 1;

    GriddedDistribution dist;
    dist.z_min = z_lo;
    dist.z_max = z_hi;
    dist.step = step;
    dist.pdf.assign(n, 0.0);

    // Component densities sampled on their half-axes (index j at rate j*step;
    // the 0 node stands in for the 0+ limit), each normalized to unit
    // trapezoid mass so mixtures stay exact in the grid arithmetic.
    std::vector<double> f_theta(n_neg + 1), f_xi(n_pos + 1);
    f_theta[0] = skg_rate_pdf(link, kEdgeEps);
    for (std::size_t j = 1; j <= n_neg; ++j)
        f_theta[j] = skg_rate_pdf(link, step * static_cast<double>(j));
    f_xi[0] = tx_rate_pdf(link.tx_channel(), kEdgeEps);
    for (std::size_t j = 1; j <= n_pos; ++j)
        f_xi[j] = tx_rate_pdf(link.tx_channel(), step * static_cast<double>(j));
    const auto normalize = [step](std::vector<double>& f) {
        double mass = 0.0;
        for (std::size_t j = 0; j + 1 < f.size(); ++j)
            mass += 0.5 * (f[j] + f[j + 1]) * step;
        if (!(mass > 0.9 && mass < 1.1))
            throw NumericalError("build_net_usage: component mass far from 1");
        for (double& v : f) v /= mass;
    };
    normalize(f_theta);
    normalize(f_xi);

    if (scheme.kind == SchemeKind::Deterministic) {
        // Z = xi - theta: convolve f_xi with the density of -theta, which is
        // f_theta mirrored onto [z_lo, 0]. The rectangle-sum convolution
        // wants the jump at the 0 edge sampled at half height.
        std::vector<double> f_neg(n_neg + 1), f_pos(f_xi);
        for (std::size_t k = 0; k <= n_neg; ++k) f_neg[k] = f_theta[n_neg - k];
        f_neg[n_neg] *= 0.5;
        f_pos[0] *= 0.5;
        const std::vector<double> conv = fft_convolve(f_neg, f_pos);
        for (std::size_t i = 0; i < n; ++i)
            dist.pdf[i] = std::max(0.0, conv[i] * step);
    } else {
        // Pointwise mixture; the grid point at 0 carries the average of the
        // one-sided limits.
        const double p = scheme.tx_prob;
        for (std::size_t j = 0; j <= n_neg; ++j)
            dist.pdf[n_neg - j] += (1.0 - p) * f_theta[j];
        for (std::size_t j = 0; j <= n_pos; ++j)
            dist.pdf[n_neg + j] += p * f_xi[j];
        dist.pdf[n_neg] *= 0.5;
    }

    dist.cdf.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        dist.cdf[i] = dist.cdf[i - 1] + 0.5 * (dist.pdf[i - 1] + dist.pdf[i]) * step;
    const double mass = dist.cdf.back();
    if (!(mass > 0.9 && mass < 1.1))
        throw NumericalError("build_net_usage: density mass far from 1");
    const double scale = 1.0 / mass;
    for (std::size_t i = 0; i < n; ++i) {
        dist.pdf[i] *= scale;
        dist.cdf[i] *= scale;
    }
    dist.validate();
    return dist;
}

double net_usage_mean(const GriddedDistribution& dist) { return dist.mean(); }

double net_usage_variance(const GriddedDistribution& dist) {
    return dist.variance();
}

double critical_tx_prob(const LinkPair& link) {
    const double e_theta = rate_moment(RateKind::SKG, link, 1).value;
    const double e_xi = rate_moment(RateKind::TX, link, 1).value;
    return e_theta / (e_theta + e_xi);
}

double sample_net_usage(const LinkPair& link, const SchemeSpec& scheme,
                        Philox& rng) {
    if (scheme.kind == SchemeKind::Deterministic) {
        const SlotSample s = sample_slot(link, rng);
        return s.xi - s.theta;
    }
    // Bernoulli first, then exactly one of the two rates.
    if (rng.bernoulli(scheme.tx_prob)) {
        const double xt = link.tx_channel().sample_snr(rng);
        return std::log1p(xt) / std::numbers::ln2;
    }
    const double x = link.main.sample_snr(rng);
    const double y = link.eve.sample_snr(rng);
    return -std::log1p(x / (1.0 + y)) / std::numbers::ln2;
}

} // namespace skbudget
