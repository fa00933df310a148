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

#include "skbudget/finite_time.hpp"

#include "skbudget/errors.hpp"
#include "skbudget/fft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skbudget {

namespace {

constexpr double kBoundaryTol = 1e-11; // ruin mass tolerated past the pinned top
constexpr double kTailMass = 1e-11;    // kernel tail used for the read band

// Budget above which ruin within t_max slots has probability <= delta,
// from a union-of-Chernoff bound on the partial sums of Z. Capped by the
// exact reach t_max * z_max of the truncated support.
double pinning_extension(const GriddedDistribution& dist, int t_max,
                         double delta) {
    const double z_abs =
        std::max({std::abs(dist.z_min), std::abs(dist.z_max), 1.0});
    const double r_max = 600.0 / z_abs;
    const double log_term = std::log((t_max + 1.0) / delta);
    double best = t_max * std::max(dist.z_max, 0.0);
    double r = 1e-4;
    while (r < r_max) {
        const double g = std::log(dist.mgf(r));
        const double need = (t_max * std::max(g, 0.0) + log_term) / r;
        best = std::min(best, need);
        r *= 1.25;
    }
    return std::max(best, 0.0);
}

} // namespace

SurvivalSurface::SurvivalSurface(GridSpec grid,
                                 std::vector<std::vector<double>> rows,
                                 SolverDiagnostics diag)
    : grid_(grid), rows_(std::move(rows)), diag_(diag) {}

const std::vector<double>& SurvivalSurface::row(int t) const {
    if (t < 0 || t > grid_.t_max)
        throw std::out_of_range("SurvivalSurface: t outside solved horizon");
    return rows_[static_cast<std::size_t>(t)];
}

double SurvivalSurface::survival(int t, double b) const {
    const auto& r = row(t);
    if (b < grid_.b_min - 1e-12 || b > grid_.b_max + 1e-12)
        throw std::out_of_range("SurvivalSurface: budget outside grid");
    const double pos =
        std::clamp((b - grid_.b_min) / grid_.step, 0.0,
                   static_cast<double>(r.size() - 1));
    const std::size_t i = std::min(static_cast<std::size_t>(pos), r.size() - 2);
    const double frac = pos - static_cast<double>(i);
    return r[i] + frac * (r[i + 1] - r[i]);
}

SurvivalSurface solve_survival(const GriddedDistribution& dist,
                               const GridSpec& grid) {
    dist.validate();
    grid.validate();
    if (std::abs(dist.step - grid.step) > 1e-9 * grid.step)
        throw ConfigError("solve_survival: distribution and budget grids must share one step");
    const double step = grid.step;
    const double z0_pos = dist.z_min / step;
    if (std::abs(z0_pos - std::round(z0_pos)) > 1e-6)
        throw ConfigError("solve_survival: distribution grid not aligned to the budget grid");
    const std::ptrdiff_t n_neg = -static_cast<std::ptrdiff_t>(std::llround(z0_pos));
    if (n_neg < 0)
        throw ConfigError("solve_survival: distribution support must reach below 0");

    // Width of the band whose reads would fall above the internal grid: the
    // magnitude of the lower kernel quantile at kTailMass.
    double z_band = 0.0;
    for (std::size_t j = 0; j < dist.size(); ++j) {
        if (dist.cdf[j] > kTailMass) {
            z_band = std::max(0.0, -dist.z_at(j));
            break;
        }
    }
    const std::size_t band_pts =
        static_cast<std::size_t>(std::ceil(z_band / step)) + 1;

    const double ext = pinning_extension(dist, grid.t_max, kBoundaryTol);
    const double b_top =
        std::ceil((grid.b_max + ext) / step) * step + static_cast<double>(band_pts) * step;
    const std::size_t n_int =
        static_cast<std::size_t>(std::llround(b_top / step)) + 1;
    if (n_int < band_pts + 2)
        throw ConfigError("solve_survival: budget grid too small for the kernel support");

    // Trapezoid-weighted kernel.
    std::vector<double> kernel(dist.size());
    for (std::size_t j = 0; j < dist.size(); ++j) {
        const double w = (j == 0 || j + 1 == dist.size()) ? 0.5 : 1.0;
        kernel[j] = w * dist.pdf[j] * step;
    }
    FftConvolver convolver(std::move(kernel), n_int);

    // CDF of Z at every internal budget point, for the step-function part.
    std::vector<double> cdf_at_b(n_int);
    for (std::size_t k = 0; k < n_int; ++k)
        cdf_at_b[k] = dist.cdf_at(static_cast<double>(k) * step);

    SolverDiagnostics diag;
    diag.extension_bits = b_top - grid.b_max;
    diag.internal_points = n_int;
    diag.fft_size = convolver.padded_size();

    // Row t = 0: step function 1{b > 0}.
    std::vector<double> cur(n_int, 1.0);
    cur[0] = 0.0;

    const std::size_t user_n = grid.point_count();
    const std::ptrdiff_t user_zero =
        -static_cast<std::ptrdiff_t>(std::llround(grid.b_min / step));
    std::vector<std::vector<double>> rows(
        static_cast<std::size_t>(grid.t_max) + 1);
    const auto store_row = [&](std::vector<double>& out) {
        out.resize(user_n);
        for (std::size_t i = 0; i < user_n; ++i) {
            const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i) - user_zero;
            out[i] = k <= 0 ? 0.0 : cur[static_cast<std::size_t>(k)];
        }
    };
    store_row(rows[0]);

    std::vector<double> g(n_int), next(n_int);
    for (int t = 1; t <= grid.t_max; ++t) {
        // Split off the step part c * 1{b > 0}; its image under the kernel is
        // c * F_Z(b) exactly, so only the continuous remainder is convolved.
        const double c = cur[1];
        g[0] = 0.0;
        for (std::size_t k = 1; k < n_int; ++k) g[k] = cur[k] - c;
        const std::vector<double>& conv = convolver.convolve(g);
        for (std::size_t k = 0; k < n_int; ++k)
            next[k] = c * cdf_at_b[k] + conv[k + static_cast<std::size_t>(n_neg)];

        next[0] = 0.0;
        for (std::size_t k = n_int - band_pts; k < n_int; ++k) next[k] = 1.0;

        double adj = 0.0;
        double run_max = 0.0;
        for (std::size_t k = 0; k < n_int; ++k) {
            double v = next[k];
            if (v < 0.0) { adj = std::max(adj, -v); v = 0.0; }
            if (v > 1.0) { adj = std::max(adj, v - 1.0); v = 1.0; }
            if (v > cur[k]) { adj = std::max(adj, v - cur[k]); v = cur[k]; }
            if (v < run_max) { adj = std::max(adj, run_max - v); v = run_max; }
            run_max = v;
            next[k] = v;
        }
        diag.max_adjustment = std::max(diag.max_adjustment, adj);

        cur.swap(next);
        store_row(rows[static_cast<std::size_t>(t)]);
    }

    return SurvivalSurface(grid, std::move(rows), diag);
}

double outage_at(const SurvivalSurface& surface, int t, double b0) {
    return 1.0 - surface.survival(t, b0);
}

} // namespace skbudget
