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

#include "skbudget/channel.hpp"

#include "skbudget/errors.hpp"
#include "skbudget/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace skbudget {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// 2^t - 1 without cancellation for small t; +inf-safe for huge t.
double pow2m1(double t) {
    const double e = t * kLn2;
    if (e > 700.0) return std::exp(700.0); // effectively infinite vs any SNR
    return std::expm1(e);
}

} // namespace

ChannelModel::ChannelModel(ChannelFamily family, double mean_snr)
    : family_(family), mean_snr_(mean_snr) {
    if (!(mean_snr > 0.0) || !std::isfinite(mean_snr))
        throw std::domain_error("ChannelModel: mean SNR must be positive");
}

ChannelModel ChannelModel::from_db(ChannelFamily family, double mean_snr_db) {
    return ChannelModel(family, std::pow(10.0, mean_snr_db / 10.0));
}

double ChannelModel::snr_cdf(double x) const {
    if (x <= 0.0) return 0.0;
    return -std::expm1(-x / mean_snr_);
}

double ChannelModel::snr_pdf(double x) const {
    if (x < 0.0) return 0.0;
    return std::exp(-x / mean_snr_) / mean_snr_;
}

double ChannelModel::snr_quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("snr_quantile: u must be in [0, 1]");
    return -mean_snr_ * std::log1p(-u); // +inf at u = 1
}

double ChannelModel::sample_snr(Philox& rng) const {
    return rng.exponential(mean_snr_);
}

double skg_rate_cdf(const LinkPair& link, double t) {
    if (t < 0.0) throw std::domain_error("skg_rate_cdf: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double w = pow2m1(t);
    const double gx = link.main.mean_snr();
    if (w / gx > 50.0) return 1.0; // survival below 2e-22 for every Y
    // Pr(theta <= t) = E_Y[ Pr(X <= (2^t - 1)(1 + Y)) ], integrated over the
    // quantile transform of Y so the domain is the unit interval.
    const auto& eve = link.eve;
    const auto inner = [&](double u) {
        const double y = eve.snr_quantile(u);
        return link.main.snr_cdf(w * (1.0 + y));
    };
    const auto res = integrate_adaptive(inner, 0.0, 1.0, 1e-13, 1e-12);
    if (!res.converged)
        throw NumericalError("skg_rate_cdf: quadrature did not converge");
    return std::min(1.0, std::max(0.0, res.value));
}

double skg_rate_pdf(const LinkPair& link, double t) {
    if (t <= 0.0) return 0.0;
    const double w = pow2m1(t);
    const double gx = link.main.mean_snr();
    if (w / gx > 50.0) return 0.0;
    const double dw = kLn2 * (w + 1.0); // d(2^t - 1)/dt
    const auto& eve = link.eve;
    const auto inner = [&](double u) {
        const double y = eve.snr_quantile(u);
        if (!std::isfinite(y)) return 0.0; // density vanishes in the far tail
        return dw * (1.0 + y) * link.main.snr_pdf(w * (1.0 + y));
    };
    const auto res = integrate_adaptive(inner, 0.0, 1.0, 1e-13, 1e-10);
    if (!res.converged)
        throw NumericalError("skg_rate_pdf: quadrature did not converge");
    return std::max(0.0, res.value);
}

double tx_rate_cdf(const ChannelModel& main, double t) {
    if (t < 0.0) throw std::domain_error("tx_rate_cdf: t must be >= 0");
    if (t == 0.0) return 0.0;
    return main.snr_cdf(pow2m1(t));
}

double tx_rate_pdf(const ChannelModel& main, double t) {
    if (t <= 0.0) return 0.0;
    const double w = pow2m1(t);
    return kLn2 * (w + 1.0) * main.snr_pdf(w);
}

double rate_upper_quantile(RateKind kind, const LinkPair& link,
                           double tail_mass) {
    const auto survival = [&](double t) {
        return kind == RateKind::SKG ? 1.0 - skg_rate_cdf(link, t)
                                     : 1.0 - tx_rate_cdf(link.tx_channel(), t);
    };
    double hi = 1.0;
    while (survival(hi) > tail_mass) {
        hi *= 2.0;
        if (hi > 1e6)
            throw NumericalError("rate_upper_quantile: tail did not decay");
    }
    double lo = 0.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (survival(mid) > tail_mass ? lo : hi) = mid;
    }
    return hi;
}

MomentResult rate_moment(RateKind kind, const LinkPair& link, int order) {
    if (order != 1 && order != 2)
        throw std::domain_error("rate_moment: order must be 1 or 2");
    // E[R^k] = integral of k t^(k-1) (1 - F(t)) dt over the positive axis,
    // truncated where the survival function is negligible.
    const double t_hi = rate_upper_quantile(kind, link, 1e-15);
    const auto integrand = [&](double t) {
        const double surv = kind == RateKind::SKG
                                ? 1.0 - skg_rate_cdf(link, t)
                                : 1.0 - tx_rate_cdf(link.tx_channel(), t);
        return order == 1 ? surv : 2.0 * t * surv;
    };
    // First pass sizes the value, second pass pins the absolute tolerance to
    // it so the certified relative error holds even for spiked integrands.
    const auto rough = integrate_adaptive(integrand, 0.0, t_hi, 1e-9, 1e-6);
    const double scale = std::max(std::abs(rough.value), 1e-30);
    const auto res =
        integrate_adaptive(integrand, 0.0, t_hi, 1e-7 * scale, 0.0);
    const double rel = res.error_estimate / std::max(std::abs(res.value), 1e-300);
    if (!res.converged || rel > 1e-6) {
        std::ostringstream msg;
        msg << "rate_moment: quadrature not converged (value " << res.value
            << ", rel error " << rel << ", " << res.evaluations << " evals)";
        throw NumericalError(msg.str());
    }
    return MomentResult{res.value, rel};
}

SlotSample sample_slot(const LinkPair& link, Philox& rng) {
    // Draw order is fixed (X, Y, X~) so seeded runs are reproducible.
    const double x = link.main.sample_snr(rng);
    const double y = link.eve.sample_snr(rng);
    const double xt = link.tx_channel().sample_snr(rng);
    SlotSample s;
    s.theta = std::log1p(x / (1.0 + y)) / kLn2;
    s.xi = std::log1p(xt) / kLn2;
    return s;
}

double sample_skg_rate(const LinkPair& link, Philox& rng) {
    const double x = link.main.sample_snr(rng);
    const double y = link.eve.sample_snr(rng);
    return std::log1p(x / (1.0 + y)) / kLn2;
}

} // namespace skbudget
