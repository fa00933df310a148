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

#include <array>
#include <cmath>
#include <cstdint>

namespace skbudget {

// Counter-based generator (Philox-4x32-10, Salmon et al. SC 2011).
//
// Each (seed, stream) pair is an independent substream; simulators give every
// trial its own stream id so the aggregate statistics do not depend on how
// trials are partitioned across threads.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          stream_{static_cast<std::uint32_t>(stream),
                  static_cast<std::uint32_t>(stream >> 32)} {}

    std::uint64_t next_u64() noexcept {
        if (avail_ == 0) refill();
        const int i = 2 * (2 - avail_);
        --avail_;
        return static_cast<std::uint64_t>(out_[i]) |
               (static_cast<std::uint64_t>(out_[i + 1]) << 32);
    }

    /// Uniform draw on the open interval (0, 1).
    double uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Exponential draw with the given mean; strictly positive.
    double exponential(double mean) noexcept {
        return -mean * std::log(uniform());
    }

    bool bernoulli(double p) noexcept { return uniform() < p; }

private:
    static void mul_hi_lo(std::uint32_t a, std::uint32_t b,
                          std::uint32_t& lo, std::uint32_t& hi) noexcept {
        const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
        lo = static_cast<std::uint32_t>(prod);
        hi = static_cast<std::uint32_t>(prod >> 32);
    }

    void refill() noexcept {
        std::uint32_t c0 = block_[0], c1 = block_[1];
        std::uint32_t c2 = stream_[0], c3 = stream_[1];
        std::uint32_t k0 = key_[0], k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            std::uint32_t lo0, hi0, lo1, hi1;
            mul_hi_lo(0xD2511F53u, c0, lo0, hi0);
            mul_hi_lo(0xCD9E8D57u, c2, lo1, hi1);
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            const std::uint32_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        out_ = {c0, c1, c2, c3};
        if (++block_[0] == 0) ++block_[1];
        avail_ = 2;
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 2> block_{0, 0};
    std::array<std::uint32_t, 2> stream_;
    std::array<std::uint32_t, 4> out_{};
    int avail_ = 0;
};

} // namespace skbudget
