// SPDX-License-Identifier: Apache-2.0
//
// relaymimo: hybrid-detection massive MIMO relay uplink toolkit
// Copyright (C) 2026 The relaymimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RELAYMIMO_RNG_HPP
#define RELAYMIMO_RNG_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace relaymimo
{

// Philox4x32-10 counter-based bijection (Salmon et al., SC'11).
// Output depends only on (counter, key), so any draw can be reproduced without replaying the stream.
struct Philox4x32
{
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static constexpr Counter round(const Counter &c, const Key &k) noexcept
    {
        const std::uint64_t p0 = std::uint64_t(kMul0) * c[0];
        const std::uint64_t p1 = std::uint64_t(kMul1) * c[2];
        const auto hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
        const auto hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }

    static constexpr Counter apply(Counter c, Key k) noexcept
    {
        for (int r = 0; r < 10; ++r)
        {
            if (r > 0)
            {
                k[0] += kWeyl0;
                k[1] += kWeyl1;
            }
            c = round(c, k);
        }
        return c;
    }
};

// One independent random substream, keyed by (seed, stream_index).
// Each call to a sampling method consumes exactly one Philox block, so the n-th draw of a
// stream is a pure function of (seed, stream_index, n) on every platform and thread count.
class RngStream
{
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index) noexcept
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}, stream_(stream_index)
    {
    }

    std::uint64_t seed() const noexcept { return std::uint64_t(key_[0]) | (std::uint64_t(key_[1]) << 32); }
    std::uint64_t stream_index() const noexcept { return stream_; }
    std::uint64_t blocks_used() const noexcept { return block_; }

    Philox4x32::Counter next_block() noexcept
    {
        const Philox4x32::Counter ctr{std::uint32_t(block_), std::uint32_t(block_ >> 32),
                                      std::uint32_t(stream_), std::uint32_t(stream_ >> 32)};
        ++block_;
        return Philox4x32::apply(ctr, key_);
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept
    {
        const auto b = next_block();
        return to_unit(b[0], b[1]);
    }

    // Standard complex normal scaled to CN(0, variance): real and imaginary parts N(0, variance/2).
    std::complex<double> complex_normal(double variance = 1.0) noexcept
    {
        const auto b = next_block();
        const double u1 = 1.0 - to_unit(b[0], b[1]); // (0, 1]
        const double u2 = to_unit(b[2], b[3]);
        const double r = std::sqrt(-variance * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(theta), r * std::sin(theta)};
    }

    // Real N(0, 1) from the cosine branch of Box-Muller.
    double normal() noexcept
    {
        const auto z = complex_normal(2.0);
        return z.real();
    }

private:
    static double to_unit(std::uint32_t lo, std::uint32_t hi) noexcept
    {
        const std::uint64_t bits = (std::uint64_t(hi) << 32) | lo;
        return double(bits >> 11) * 0x1.0p-53;
    }

    Philox4x32::Key key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
};

} // namespace relaymimo

#endif
