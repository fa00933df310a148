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

#include <complex>
#include <cstddef>
#include <vector>

namespace skbudget {

/// In-place radix-2 FFT; data.size() must be a power of two.
void fft(std::vector<std::complex<double>>& data, bool inverse);

std::size_t next_pow2(std::size_t n);

/// Full linear convolution of two real sequences (length a+b-1),
/// computed with zero-padded FFTs.
std::vector<double> fft_convolve(const std::vector<double>& a,
                                 const std::vector<double>& b);

/// Precomputed-kernel convolver for repeated convolutions against one
/// fixed sequence, as in the survival recursion.
class FftConvolver {
public:
    FftConvolver(std::vector<double> kernel, std::size_t signal_len);

    /// conv(signal, kernel), full length signal_len + kernel_len - 1.
    /// signal.size() must not exceed the signal_len given at construction.
    const std::vector<double>& convolve(const std::vector<double>& signal);

    std::size_t padded_size() const { return padded_; }

private:
    std::size_t kernel_len_;
    std::size_t signal_len_;
    std::size_t padded_;
    std::vector<std::complex<double>> kernel_fft_;
    std::vector<std::complex<double>> work_;
    std::vector<double> out_;
};

} // namespace skbudget
