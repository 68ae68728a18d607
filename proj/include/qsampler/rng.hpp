#pragma once

#include "qsampler/exact.hpp"

#include <cstdint>

namespace qsampler {

/// SplitMix64 (Steele, Lea & Flood 2014). One 64-bit word of state, a fixed
/// public increment, and an avalanching output mix. Chosen because the whole
/// generator fits on a page: sample streams are reproducible bit-for-bit
/// from the seed alone, on any platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, bound) without modulo bias (rejection). bound >= 1.
    std::uint64_t next_below(std::uint64_t bound);

    /// Uniform in [0, bound) for arbitrary-size bounds (bitwise rejection).
    BigInt next_below(const BigInt& bound);

    /// Independent child stream; the parent continues from advanced state.
    SplitMix64 split() { return SplitMix64(next()); }

private:
    std::uint64_t state_;
};

} // namespace qsampler
