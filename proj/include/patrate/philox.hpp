// Philox4x64-10 counter-based generator (Salmon et al., SC'11), with the
// stream semantics of numpy.random.Philox: key = (seed, stream index),
// 256-bit counter incremented before each 4-output block. A stream is a pure
// function of (seed, stream), so samples drawn on different streams are
// independent of scheduling and thread count.

#pragma once

#include <array>
#include <cstdint>

namespace patrate {

namespace detail {

inline std::uint64_t mulhilo64(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
    const unsigned __int128 product = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(product >> 64);
    return static_cast<std::uint64_t>(product);
}

} // namespace detail

inline std::array<std::uint64_t, 4> philox4x64_10(std::array<std::uint64_t, 4> ctr,
                                                  std::array<std::uint64_t, 2> key) {
    constexpr std::uint64_t mul0 = 0xD2E7470EE14C6C93ULL;
    constexpr std::uint64_t mul1 = 0xCA5A826395121157ULL;
    constexpr std::uint64_t bump0 = 0x9E3779B97F4A7C15ULL;
    constexpr std::uint64_t bump1 = 0xBB67AE8584CAA73BULL;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += bump0;
            key[1] += bump1;
        }
        std::uint64_t hi0, hi1;
        const std::uint64_t lo0 = detail::mulhilo64(mul0, ctr[0], hi0);
        const std::uint64_t lo1 = detail::mulhilo64(mul1, ctr[2], hi1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream) : key_{seed, stream} {}

    std::uint64_t next_raw() {
        if (pos_ == 4) {
            // Pre-increment, matching numpy: the first block uses counter 1.
            if (++ctr_[0] == 0 && ++ctr_[1] == 0 && ++ctr_[2] == 0) ++ctr_[3];
            buf_ = philox4x64_10(ctr_, key_);
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    // Uniform in [0,1) with 53 random bits.
    double next_uniform() {
        return static_cast<double>(next_raw() >> 11) * 0x1.0p-53;
    }

private:
    std::array<std::uint64_t, 4> ctr_{0, 0, 0, 0};
    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> buf_{};
    int pos_ = 4;
};

} // namespace patrate
