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

#include "skbudget/linalg.hpp"

#include "skbudget/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skbudget {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n),
      kl_(std::min(kl, n > 0 ? n - 1 : 0)),
      ku_(std::min(ku, n > 0 ? n - 1 : 0)),
      width_(2 * kl_ + ku_ + 1),
      data_(n * width_, 0.0) {
    if (n == 0) throw std::invalid_argument("BandedMatrix: empty matrix");
}

double& BandedMatrix::at(std::size_t i, std::size_t j) {
    if (i >= n_ || j >= n_ || j + kl_ < i || j > i + ku_)
        throw std::out_of_range("BandedMatrix::at outside band");
    return store(i, j);
}

double BandedMatrix::get(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_ || !in_store(i, j)) return 0.0;
    return store(i, j);
}

double BandedMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double row = 0.0;
        const std::size_t j_lo = i > kl_ ? i - kl_ : 0;
        const std::size_t j_hi = std::min(n_ - 1, i + ku_ + kl_);
        for (std::size_t j = j_lo; j <= j_hi; ++j) row += std::abs(store(i, j));
        best = std::max(best, row);
    }
    return best;
}

BandedSolveResult banded_solve(BandedMatrix& a, std::vector<double>& rhs) {
    const std::size_t n = a.size();
    if (rhs.size() != n)
        throw std::invalid_argument("banded_solve: rhs size mismatch");
    const std::size_t kl = a.lower_bandwidth();
    const std::size_t ku = a.upper_bandwidth();
    const double norm_a = a.norm_inf();

    // Second right-hand side of ones rides along for the condition estimate.
    std::vector<double> ones(n, 1.0);

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i_end = std::min(n - 1, k + kl);
        std::size_t p = k;
        double best = std::abs(a.store(k, k));
        for (std::size_t i = k + 1; i <= i_end; ++i) {
            const double v = std::abs(a.store(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (best == 0.0)
            throw NumericalError("banded_solve: singular matrix (zero pivot)");
        const std::size_t j_hi = std::min(n - 1, k + ku + kl);
        if (p != k) {
            for (std::size_t j = k; j <= j_hi; ++j)
                std::swap(a.store(k, j), a.store(p, j));
            std::swap(rhs[k], rhs[p]);
            std::swap(ones[k], ones[p]);
        }
        const double piv = a.store(k, k);
        for (std::size_t i = k + 1; i <= i_end; ++i) {
            const double m = a.store(i, k) / piv;
            if (m == 0.0) continue;
            a.store(i, k) = 0.0;
            for (std::size_t j = k + 1; j <= j_hi; ++j)
                a.store(i, j) -= m * a.store(k, j);
            rhs[i] -= m * rhs[k];
            ones[i] -= m * ones[k];
        }
    }

    const auto back_substitute = [&](std::vector<double>& x) {
        for (std::size_t ii = n; ii-- > 0;) {
            const std::size_t j_hi = std::min(n - 1, ii + ku + kl);
            double acc = x[ii];
            for (std::size_t j = ii + 1; j <= j_hi; ++j)
                acc -= a.store(ii, j) * x[j];
            x[ii] = acc / a.store(ii, ii);
        }
    };
    back_substitute(rhs);
    back_substitute(ones);

    double inv_norm = 0.0;
    for (const double v : ones) inv_norm = std::max(inv_norm, std::abs(v));
    return BandedSolveResult{norm_a * inv_norm};
}

} // namespace skbudget
