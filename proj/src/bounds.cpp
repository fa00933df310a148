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

#include "skbudget/bounds.hpp"

#include "skbudget/errors.hpp"
#include "skbudget/rng.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace skbudget {

bool has_positive_support(const GriddedDistribution& dist) {
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist.z_at(i) > 0.0 && dist.pdf[i] > 0.0) return true;
    return false;
}

AdjustmentCoefficient adjustment_coefficient(const GriddedDistribution& dist) {
    const double mean = dist.mean();
    if (mean >= 0.0)
        throw std::domain_error(
            "adjustment_coefficient: E[Z] >= 0 (transmission probability at or "
            "above the critical value), no positive root exists");
    if (!has_positive_support(dist))
        throw std::domain_error(
            "adjustment_coefficient: Z has no mass above 0, the budget cannot "
            "be exhausted");

    // g(r) = ln E[exp(r Z)] is convex with g(0) = 0 and g'(0) = E[Z] < 0;
    // double the upper bracket until g turns positive (guaranteed on a
    // truncated grid with positive mass), then bisect.
    const double r_cap = 600.0 / std::max(dist.z_max, 1e-9);
    double hi = 0.1;
    while (dist.mgf(hi) <= 1.0) {
        hi *= 2.0;
        if (hi > r_cap)
            throw NumericalError(
                "adjustment_coefficient: MGF never exceeded 1 within the "
                "representable range");
    }
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (dist.mgf(mid) < 1.0 ? lo : hi) = mid;
    }
    double r = 0.5 * (lo + hi);
    // Newton polish.
    for (int i = 0; i < 4; ++i) {
        const double m = dist.mgf(r);
        const double mp = dist.mgf_prime(r);
        if (mp <= 0.0) break;
        const double next = r - (m - 1.0) / mp;
        if (next > 0.0 && std::isfinite(next)) r = next;
    }

    AdjustmentCoefficient coef;
    coef.r_star = r;
    coef.residual = std::abs(dist.mgf(r) - 1.0);
    if (coef.residual > 1e-10) {
        std::ostringstream msg;
        msg << "adjustment_coefficient: residual " << coef.residual
            << " above 1e-10 at r = " << r;
        throw NumericalError(msg.str());
    }
    // Truncated-tail bias of the MGF at the root must be negligible.
    const double trunc_bias = 1e-9 * std::exp(r * dist.z_max);
    if (trunc_bias > 1e-6) {
        std::ostringstream msg;
        msg << "adjustment_coefficient: grid truncation bias " << trunc_bias
            << " too large at r = " << r;
        throw NumericalError(msg.str());
    }
    return coef;
}

double lundberg_bound(const AdjustmentCoefficient& coef, double b0) {
    if (b0 < 0.0) throw std::domain_error("lundberg_bound: b0 must be >= 0");
    return std::exp(-coef.r_star * b0);
}

double bound_psi_hat(const GriddedDistribution& dist, int t, double b0) {
    if (!(b0 > 0.0)) throw std::domain_error("bound_psi_hat: b0 must be positive");
    if (t < 0) throw std::domain_error("bound_psi_hat: t must be >= 0");
    const double mu = dist.mean();
    const double var = dist.variance();
    const double td = static_cast<double>(t);
    return std::sqrt(td * var + td * td * mu * mu) / b0;
}

MonteCarloEstimate bound_psi(const GriddedDistribution& dist, int t, double b0,
                             std::uint64_t trials, std::uint64_t seed) {
    if (!(b0 > 0.0)) throw std::domain_error("bound_psi: b0 must be positive");
    if (t < 0) throw std::domain_error("bound_psi: t must be >= 0");
    if (trials == 0) throw std::domain_error("bound_psi: trials must be >= 1");
    double acc = 0.0, acc2 = 0.0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        Philox rng(seed, i);
        double s = 0.0;
        for (int k = 0; k < t; ++k) s += dist.quantile(rng.uniform());
        const double v = std::max(s, 0.0) / b0;
        acc += v;
        acc2 += v * v;
    }
    const double n = static_cast<double>(trials);
    MonteCarloEstimate est;
    est.value = acc / n;
    const double var = std::max(0.0, acc2 / n - est.value * est.value);
    est.std_error = std::sqrt(var / n);
    return est;
}

} // namespace skbudget
