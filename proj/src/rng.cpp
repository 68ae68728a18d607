#include "qsampler/rng.hpp"

#include <stdexcept>

namespace qsampler {

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    if (bound == 1) return 0;
    // Reject draws from the final partial block of [0, 2^64).
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = next();
    } while (x > limit);
    return x % bound;
}

BigInt SplitMix64::next_below(const BigInt& bound) {
    if (bound <= 0) throw std::invalid_argument("next_below: bound must be positive");
    if (bound == 1) return 0;
    const int nbits = static_cast<int>(boost::multiprecision::msb(bound - 1)) + 1;
    const int words = (nbits + 63) / 64;
    while (true) {
        BigInt x = 0;
        for (int w = 0; w < words; ++w) {
            x <<= 64;
            x |= BigInt(next());
        }
        x >>= (words * 64 - nbits);
        if (x < bound) return x;
    }
}

} // namespace qsampler
