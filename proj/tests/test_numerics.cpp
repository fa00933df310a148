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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skbudget/errors.hpp"
#include "skbudget/fft.hpp"
#include "skbudget/linalg.hpp"
#include "skbudget/quadrature.hpp"
#include "skbudget/rng.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace skbudget;

TEST_CASE("adaptive simpson reproduces closed-form integrals") {
    const auto sq = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(sq.converged);
    CHECK(sq.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const auto sine =
        integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                           std::numbers::pi);
    CHECK(sine.converged);
    CHECK(sine.value == doctest::Approx(2.0).epsilon(1e-11));

    // Integrable endpoint kink.
    const auto root =
        integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0,
                           1e-10, 1e-10);
    CHECK(root.value == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("gauss-legendre nodes match the published 5-point rule") {
    const auto rule = gauss_legendre(5);
    const double nodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                             0.5384693101056831, 0.9061798459386640};
    const double weights[5] = {0.2369268850561891, 0.4786286704993665,
                               0.5688888888888889, 0.4786286704993665,
                               0.2369268850561891};
    for (int i = 0; i < 5; ++i) {
        CHECK(rule.nodes[i] == doctest::Approx(nodes[i]).epsilon(1e-13));
        CHECK(rule.weights[i] == doctest::Approx(weights[i]).epsilon(1e-13));
    }
}

TEST_CASE("n-point gauss-legendre is exact through degree 2n-1") {
    const auto rule = gauss_legendre(8);
    for (int k = 0; k <= 15; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * std::pow(rule.nodes[i], k);
        const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
        CHECK(acc == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("composite panels integrate a smooth function") {
    const std::vector<double> edges{0.0, 0.7, 1.1, 3.0};
    const auto rule = composite_gauss_legendre(edges, 8);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * std::exp(rule.nodes[i]);
    CHECK(acc == doctest::Approx(std::exp(3.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("fft matches a direct dft") {
    const std::size_t n = 64;
    Philox rng(2024, 0);
    std::vector<std::complex<double>> data(n);
    for (auto& x : data) x = {rng.uniform() - 0.5, rng.uniform() - 0.5};
    auto ref = data;

    std::vector<std::complex<double>> dft(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -2.0 * std::numbers::pi *
                               static_cast<double>(k * j) / static_cast<double>(n);
            acc += ref[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        dft[k] = acc;
    }

    fft(data, false);
    for (std::size_t k = 0; k < n; ++k)
        CHECK(std::abs(data[k] - dft[k]) < 1e-10);

    fft(data, true);
    for (std::size_t k = 0; k < n; ++k)
        CHECK(std::abs(data[k] - ref[k]) < 1e-12);
}

TEST_CASE("fft convolution equals the direct convolution") {
    Philox rng(7, 1);
    for (const auto& [na, nb] : {std::pair<int, int>{37, 25}, {128, 100}, {5, 1}}) {
        std::vector<double> a(na), b(nb);
        for (auto& x : a) x = rng.uniform() - 0.3;
        for (auto& x : b) x = rng.uniform() - 0.7;
        std::vector<double> direct(a.size() + b.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) direct[i + j] += a[i] * b[j];
        const auto fast = fft_convolve(a, b);
        REQUIRE(fast.size() == direct.size());
        for (std::size_t i = 0; i < direct.size(); ++i)
            CHECK(fast[i] == doctest::Approx(direct[i]).epsilon(1e-10));

        FftConvolver conv(b, a.size());
        const auto& again = conv.convolve(a);
        for (std::size_t i = 0; i < direct.size(); ++i)
            CHECK(again[i] == doctest::Approx(direct[i]).epsilon(1e-10));
    }
}

namespace {

// Dense partial-pivot elimination, used as the oracle for the banded solver.
std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
        std::swap(a[p], a[k]);
        std::swap(b[p], b[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
            b[i] -= m * b[k];
        }
    }
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) b[ii] -= a[ii][j] * b[j];
        b[ii] /= a[ii][ii];
    }
    return b;
}

} // namespace

TEST_CASE("banded solve agrees with dense elimination") {
    Philox rng(11, 0);
    for (const auto& [n, kl, ku] :
         {std::tuple<std::size_t, std::size_t, std::size_t>{40, 3, 2},
          {25, 24, 24},
          {60, 1, 4}}) {
        BandedMatrix band(n, kl, ku);
        std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j + kl < i || j > i + ku) continue;
                const double v =
                    (i == j ? 3.0 : 0.0) + rng.uniform() - 0.5;
                band.at(i, j) = v;
                dense[i][j] = v;
            }
        }
        std::vector<double> rhs(n);
        for (auto& x : rhs) x = rng.uniform() * 2.0 - 1.0;
        const auto expected = dense_solve(dense, rhs);

        auto x = rhs;
        const auto res = banded_solve(band, x);
        CHECK(res.condition_estimate > 0.0);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(x[i] == doctest::Approx(expected[i]).epsilon(1e-9));
    }
}

TEST_CASE("banded solve rejects singular systems") {
    BandedMatrix a(4, 1, 1);
    std::vector<double> rhs{1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(banded_solve(a, rhs), NumericalError);
}
