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
#include <functional>
#include <vector>

namespace skbudget {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    std::size_t evaluations = 0;
};

/// Adaptive Simpson integration of f on [a, b].
/// Stops when the local error estimate is below abs_tol + rel_tol*|integral|.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double abs_tol = 1e-12,
                                    double rel_tol = 1e-10,
                                    int max_depth = 60);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

/// Composite rule: `points_per_panel`-point Gauss-Legendre on each interval
/// [edges[i], edges[i+1]]. Edges must be strictly increasing.
GaussLegendreRule composite_gauss_legendre(const std::vector<double>& edges,
                                           int points_per_panel);

} // namespace skbudget
