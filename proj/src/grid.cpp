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

#include "skbudget/grid.hpp"

#include "skbudget/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace skbudget {

std::size_t GriddedDistribution::aligned_index(double z) const {
    const double pos = (z - z_min) / step;
    const double rounded = std::round(pos);
    if (std::abs(pos - rounded) > 1e-6 || rounded < 0.0 ||
        rounded >= static_cast<double>(size()))
        throw std::out_of_range("GriddedDistribution: z not on grid");
    return static_cast<std::size_t>(rounded);
}

double GriddedDistribution::cdf_at(double z) const {
    if (z <= z_min) return 0.0;
    if (z >= z_max) return 1.0;
    const double pos = (z - z_min) / step;
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return cdf[i] + frac * (cdf[i + 1] - cdf[i]);
}

double GriddedDistribution::pdf_at(double z) const {
    if (z < z_min || z > z_max) return 0.0;
    const double pos = (z - z_min) / step;
    const std::size_t i = std::min(static_cast<std::size_t>(pos), size() - 2);
    const double frac = pos - static_cast<double>(i);
    return pdf[i] + frac * (pdf[i + 1] - pdf[i]);
}

double GriddedDistribution::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("quantile: u must be in [0, 1]");
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.begin()) return z_min;
    if (it == cdf.end()) return z_max;
    const std::size_t i = static_cast<std::size_t>(it - cdf.begin());
    const double c0 = cdf[i - 1];
    const double c1 = cdf[i];
    const double frac = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
    return z_at(i - 1) + frac * step;
}

double GriddedDistribution::mean() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        const double w = (i == 0 || i + 1 == size()) ? 0.5 : 1.0;
        acc += w * z_at(i) * pdf[i];
    }
    return acc * step;
}

double GriddedDistribution::variance() const {
    const double mu = mean();
    double acc = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        const double w = (i == 0 || i + 1 == size()) ? 0.5 : 1.0;
        const double d = z_at(i) - mu;
        acc += w * d * d * pdf[i];
    }
    return acc * step;
}

double GriddedDistribution::mgf(double r) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        const double w = (i == 0 || i + 1 == size()) ? 0.5 : 1.0;
        acc += w * std::exp(r * z_at(i)) * pdf[i];
    }
    return acc * step;
}

double GriddedDistribution::mgf_prime(double r) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        const double w = (i == 0 || i + 1 == size()) ? 0.5 : 1.0;
        acc += w * z_at(i) * std::exp(r * z_at(i)) * pdf[i];
    }
    return acc * step;
}

void GriddedDistribution::validate() const {
    std::ostringstream msg;
    if (size() < 2 || cdf.size() != pdf.size()) {
        msg << "gridded distribution: inconsistent array sizes (" << pdf.size()
            << " vs " << cdf.size() << ")";
        throw NumericalError(msg.str());
    }
    if (!(step > 0.0)) throw NumericalError("gridded distribution: step <= 0");
    const double implied =
        (z_max - z_min) / step + 1.0 - static_cast<double>(size());
    if (std::abs(implied) > 1e-6)
        throw NumericalError("gridded distribution: grid span inconsistent with step");
    for (std::size_t i = 0; i < size(); ++i) {
        if (pdf[i] < 0.0) throw NumericalError("gridded distribution: negative pdf");
        if (i > 0 && cdf[i] < cdf[i - 1] - 1e-15)
            throw NumericalError("gridded distribution: cdf not monotone");
    }
    if (cdf.back() < 1.0 - kMassTol || cdf.back() > 1.0 + kMassTol)
        throw NumericalError("gridded distribution: total mass outside tolerance");
    double trap = 0.0;
    for (std::size_t i = 0; i + 1 < size(); ++i)
        trap += 0.5 * (pdf[i] + pdf[i + 1]) * step;
    if (std::abs(trap - (cdf.back() - cdf.front())) > kMassTol)
        throw NumericalError("gridded distribution: pdf mass disagrees with cdf span");
}

void GridSpec::validate() const {
    if (!(step > 0.0)) throw ConfigError("grid: step must be positive");
    if (!(b_min <= 0.0 && b_max > 0.0))
        throw ConfigError("grid: require b_min <= 0 < b_max");
    if (t_max < 1) throw ConfigError("grid: t_max must be >= 1");
    const double lo = b_min / step;
    const double hi = b_max / step;
    if (std::abs(lo - std::round(lo)) > 1e-6 ||
        std::abs(hi - std::round(hi)) > 1e-6)
        throw ConfigError("grid: bounds must be multiples of step (0 on grid)");
}

std::size_t GridSpec::point_count() const {
    return static_cast<std::size_t>(std::llround((b_max - b_min) / step)) + 1;
}

} // namespace skbudget
