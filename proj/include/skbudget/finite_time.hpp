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

#include "skbudget/grid.hpp"

#include <cstddef>
#include <vector>

namespace skbudget {

struct SolverDiagnostics {
    double max_adjustment = 0.0;  // largest clamp applied to any value
    double extension_bits = 0.0;  // internal widening above b_max
    std::size_t internal_points = 0;
    std::size_t fft_size = 0;
};

/// Survival probabilities over the budget grid for t = 0..t_max.
/// Row t = 0 is the step function 1{b > 0}; values are nonincreasing in t
/// and nondecreasing in b.
class SurvivalSurface {
public:
    SurvivalSurface(GridSpec grid, std::vector<std::vector<double>> rows,
                    SolverDiagnostics diag);

    const GridSpec& grid() const { return grid_; }
    int t_max() const { return grid_.t_max; }

    /// Survival probability at integer slot t and budget b (interpolated).
    double survival(int t, double b) const;

    const std::vector<double>& row(int t) const;
    const SolverDiagnostics& diagnostics() const { return diag_; }

private:
    GridSpec grid_;
    std::vector<std::vector<double>> rows_; // [t][budget index]
    SolverDiagnostics diag_;
};

/// Solves the survival recursion
///   surv_{t+1}(b) = integral_{s <= b} surv_t(b - s) dF_Z(s)
/// on the budget grid by FFT convolution. The step function part of each row
/// is convolved exactly through the CDF, the continuous remainder by FFT;
/// the grid is widened internally so boundary error stays below 1e-9.
SurvivalSurface solve_survival(const GriddedDistribution& dist,
                               const GridSpec& grid);

/// Outage probability 1 - surv_t(b0); throws std::out_of_range when t or b0
/// leaves the solved grid.
double outage_at(const SurvivalSurface& surface, int t, double b0);

} // namespace skbudget
