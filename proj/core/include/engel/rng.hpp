#pragma once

#include "engel/bigint.hpp"

#include <cstdint>

namespace engel {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen for reproducible sampling:
// the state transition is a fixed 64-bit counter increment, so identical
// seeds give byte-identical digit samples on every platform.
//
//   state += 0x9e3779b97f4a7c15
//   z = state; z = (z ^ z>>30) * 0xbf58476d1ce4e5b9
//   z = (z ^ z>>27) * 0x94d049bb133111eb; return z ^ z>>31
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Uniform integer in [0, bound), bound >= 1, by rejection on the smallest
// power-of-two envelope. Words are drawn most-significant-first and the
// top word is masked to bit_length(bound) bits, so acceptance probability
// exceeds 1/2 per round and the draw order is fully determined.
inline BigInt uniform_below(SplitMix64& rng, const BigInt& bound) {
    if (bound <= 0) return 0;
    if (bound == 1) return 0;
    const std::size_t bits = bit_length(bound);
    const std::size_t words = (bits + 63) / 64;
    const unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
    const std::uint64_t top_mask =
        top_bits >= 64 ? ~0ull : ((1ull << top_bits) - 1ull);
    for (;;) {
        BigInt v = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t word = rng.next();
            if (w == 0) word &= top_mask;
            v <<= 64;
            v += BigInt(static_cast<unsigned long>(word >> 32)) << 32 |
                 BigInt(static_cast<unsigned long>(word & 0xffffffffull));
        }
        if (v < bound) return v;
    }
}

} // namespace engel
