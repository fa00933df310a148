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

#include <cstddef>
#include <vector>

namespace skbudget {

/// Discretized PDF/CDF of a scalar random variable on a uniform grid.
/// The grid is aligned so that 0 is a grid point; the CDF is the trapezoid
/// cumulation of the PDF, renormalized to unit mass.
struct GriddedDistribution {
    double z_min = 0.0;
    double z_max = 0.0;
    double step = 0.0;
    std::vector<double> pdf;
    std::vector<double> cdf;

    static constexpr double kMassTol = 1e-9;

    std::size_t size() const { return pdf.size(); }
    double z_at(std::size_t i) const { return z_min + step * static_cast<double>(i); }

    /// Index of the grid point at z; throws if z is not aligned.
    std::size_t aligned_index(double z) const;

    double cdf_at(double z) const; // linear interpolation, clamped to [0, 1]
    double pdf_at(double z) const; // linear interpolation, 0 outside support
    double quantile(double u) const;

    double mean() const;
    double variance() const;

    /// E[exp(r Z)] by the trapezoid rule on the grid.
    double mgf(double r) const;
    /// d/dr E[exp(r Z)].
    double mgf_prime(double r) const;

    /// Checks the structural invariants; throws NumericalError on violation.
    void validate() const;
};

/// Budget-axis grid for the survival recursion: [b_min, b_max] with uniform
/// step and horizon t_max. 0 must be a grid point.
struct GridSpec {
    double b_min = 0.0;
    double b_max = 0.0;
    double step = 0.01;
    int t_max = 0;

    void validate() const;
    std::size_t point_count() const;
    double b_at(std::size_t i) const { return b_min + step * static_cast<double>(i); }
};

} // namespace skbudget
