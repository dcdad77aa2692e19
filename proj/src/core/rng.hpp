// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace orbitloc {

// Philox4x32-10 (Salmon et al., SC'11). Stateless: every output is a pure
// function of (counter, key), so streams can be split across threads freely.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key) {
        for (int r = 0; r < 10; ++r) {
            if (r > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }
};

/// Sequential view of one Philox stream: key from the seed, counter words 2..3
/// select the stream, words 0..1 count blocks.
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          hi_{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            buf_ = Philox4x32::block({static_cast<std::uint32_t>(n_), static_cast<std::uint32_t>(n_ >> 32), hi_[0], hi_[1]},
                                     key_);
            ++n_;
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    /// Uniform in (0, 1), 53 bits.
    double uniform() {
        const std::uint64_t a = next_u32() >> 5;
        const std::uint64_t b = next_u32() >> 6;
        return (static_cast<double>(a * 67108864u + b) + 0.5) * (1.0 / 9007199254740992.0);
    }

    /// Standard normal pair by Box-Muller.
    std::array<double, 2> normal_pair() {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double t = 2.0 * std::numbers::pi * uniform();
        return {r * std::cos(t), r * std::sin(t)};
    }

private:
    Philox4x32::Key key_;
    std::array<std::uint32_t, 2> hi_;
    std::uint64_t n_ = 0;
    Philox4x32::Counter buf_{};
    int pos_ = 4;
};

} // namespace orbitloc
