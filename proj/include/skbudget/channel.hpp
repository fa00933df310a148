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

#include "skbudget/rng.hpp"

#include <optional>

namespace skbudget {

/// SNR distribution family. Rayleigh-faded amplitudes give exponentially
/// distributed SNR, which is the only family shipped; the enum leaves room
/// for others (e.g. Rician) without touching call sites.
enum class ChannelFamily { Exponential };

/// Marginal SNR distribution of one link, linear scale.
class ChannelModel {
public:
    ChannelModel(ChannelFamily family, double mean_snr);

    /// Mean SNR given in dB, converted once at the interface.
    static ChannelModel from_db(ChannelFamily family, double mean_snr_db);

    ChannelFamily family() const { return family_; }
    double mean_snr() const { return mean_snr_; }

    double snr_cdf(double x) const;
    double snr_pdf(double x) const;
    double snr_quantile(double u) const;
    double sample_snr(Philox& rng) const;

private:
    ChannelFamily family_;
    double mean_snr_;
};

/// Main (transmitter to receiver) and eavesdropper channels. The SNR during
/// data transmission is drawn independently from `tx`, which defaults to the
/// same distribution as `main`.
struct LinkPair {
    ChannelModel main;
    ChannelModel eve;
    std::optional<ChannelModel> tx{};

    const ChannelModel& tx_channel() const { return tx ? *tx : main; }
};

enum class RateKind { SKG, TX };

struct MomentResult {
    double value = 0.0;
    double rel_error = 0.0;
};

/// CDF of the per-slot secret-key generation rate
/// log2((1 + X + Y) / (1 + Y)), computed by one-dimensional quadrature
/// over the eavesdropper SNR.
double skg_rate_cdf(const LinkPair& link, double t);

/// Density of the SKG rate (quadrature of the differentiated integrand).
double skg_rate_pdf(const LinkPair& link, double t);

/// CDF of the per-slot transmission rate log2(1 + X~).
double tx_rate_cdf(const ChannelModel& main, double t);

double tx_rate_pdf(const ChannelModel& main, double t);

/// E[rate^order] for order in {1, 2} by adaptive quadrature against the
/// survival function; throws NumericalError if the requested relative
/// tolerance (1e-6) cannot be certified.
MomentResult rate_moment(RateKind kind, const LinkPair& link, int order);

/// Smallest t with 1 - CDF(t) <= tail_mass.
double rate_upper_quantile(RateKind kind, const LinkPair& link,
                           double tail_mass);

struct SlotSample {
    double theta; // key bits generated
    double xi;    // key bits consumed when transmitting
};

/// One independent draw of (theta, xi); deterministic given the rng state.
SlotSample sample_slot(const LinkPair& link, Philox& rng);

/// One draw of the SKG rate alone (recharge-phase slots).
double sample_skg_rate(const LinkPair& link, Philox& rng);

} // namespace skbudget
