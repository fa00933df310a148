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

#include "skbudget/quadrature.hpp"

#include "skbudget/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace skbudget {

namespace {

struct SimpsonState {
    const std::function<double(double)>* f;
    std::size_t evaluations;
    double error_accum;
    bool depth_exhausted;
};

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Classic adaptive Simpson: the tolerance halves with each bisection so the
// accepted leaf errors sum to at most the requested tolerance.
double adaptive_step(SimpsonState& st, double a, double fa, double b, double fb,
                     double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = (*st.f)(lm);
    const double frm = (*st.f)(rm);
    st.evaluations += 2;
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    // Below the rounding floor further bisection cannot improve the panel.
    const double noise = 8.0 * 2.22e-16 * (std::abs(left) + std::abs(right));
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol || std::abs(delta) <= noise) {
        if (depth <= 0 && std::abs(delta) > 15.0 * tol && std::abs(delta) > noise)
            st.depth_exhausted = true;
        st.error_accum += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return adaptive_step(st, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(st, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    double rel_tol, int max_depth) {
    QuadratureResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    SimpsonState st{&f, 0, 0.0, false};
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    st.evaluations = 3;
    const double whole = simpson(a, fa, b, fb, fm);
    const double tol = abs_tol + rel_tol * std::abs(whole);
    res.value = adaptive_step(st, a, fa, b, fb, m, fm, whole, tol, max_depth);
    res.error_estimate = st.error_accum;
    res.evaluations = st.evaluations;
    res.converged = !st.depth_exhausted;
    return res;
}

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    // Newton iteration on Legendre polynomials, roots seeded by the Chebyshev
    // approximation; symmetric pairs computed once.
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

GaussLegendreRule composite_gauss_legendre(const std::vector<double>& edges,
                                           int points_per_panel) {
    if (edges.size() < 2)
        throw std::invalid_argument("composite_gauss_legendre: need >= 2 edges");
    const GaussLegendreRule base = gauss_legendre(points_per_panel);
    GaussLegendreRule rule;
    rule.nodes.reserve((edges.size() - 1) * base.nodes.size());
    rule.weights.reserve(rule.nodes.capacity());
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p];
        const double b = edges[p + 1];
        if (!(b > a))
            throw std::invalid_argument(
                "composite_gauss_legendre: edges must be strictly increasing");
        const double mid = 0.5 * (a + b);
        const double hw = 0.5 * (b - a);
        for (std::size_t k = 0; k < base.nodes.size(); ++k) {
            rule.nodes.push_back(mid + hw * base.nodes[k]);
            rule.weights.push_back(hw * base.weights[k]);
        }
    }
    return rule;
}

} // namespace skbudget
