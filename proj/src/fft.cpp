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

#include "skbudget/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace skbudget {

void fft(std::vector<std::complex<double>>& data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft: size must be a power of two");
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang =
            (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& x : data) x *= scale;
    }
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<double> fft_convolve(const std::vector<double>& a,
                                 const std::vector<double>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t out_len = a.size() + b.size() - 1;
    const std::size_t padded = next_pow2(out_len);
    std::vector<std::complex<double>> fa(padded), fb(padded);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
    fft(fa, false);
    fft(fb, false);
    for (std::size_t i = 0; i < padded; ++i) fa[i] *= fb[i];
    fft(fa, true);
    std::vector<double> out(out_len);
    for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
    return out;
}

FftConvolver::FftConvolver(std::vector<double> kernel, std::size_t signal_len)
    : kernel_len_(kernel.size()),
      signal_len_(signal_len),
      padded_(next_pow2(signal_len + kernel.size())) {
    if (kernel.empty()) throw std::invalid_argument("FftConvolver: empty kernel");
    kernel_fft_.assign(padded_, {0.0, 0.0});
    for (std::size_t i = 0; i < kernel.size(); ++i) kernel_fft_[i] = kernel[i];
    fft(kernel_fft_, false);
    work_.resize(padded_);
    out_.resize(signal_len_ + kernel_len_ - 1);
}

const std::vector<double>& FftConvolver::convolve(
    const std::vector<double>& signal) {
    if (signal.size() > signal_len_)
        throw std::invalid_argument("FftConvolver: signal longer than planned");
    std::fill(work_.begin(), work_.end(), std::complex<double>(0.0, 0.0));
    for (std::size_t i = 0; i < signal.size(); ++i) work_[i] = signal[i];
    fft(work_, false);
    for (std::size_t i = 0; i < padded_; ++i) work_[i] *= kernel_fft_[i];
    fft(work_, true);
    for (std::size_t i = 0; i < out_.size(); ++i) out_[i] = work_[i].real();
    return out_;
}

} // namespace skbudget
