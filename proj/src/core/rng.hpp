#ifndef HDLINK_RNG_HPP
#define HDLINK_RNG_HPP

#include "rational.hpp"

#include <random>

namespace hdl {

// All randomness in the engine flows through seeded generators so every
// computation is reproducible bit for bit.
inline std::mt19937_64 seeded_rng(uint64_t seed, uint64_t stream) {
    return std::mt19937_64(seed * 0x9e3779b97f4a7c15ULL + stream * 0xbf58476d1ce4e5b9ULL +
                           0x94d049bb133111ebULL);
}

// Uniform rational in [-range, range] with denominator 2^denom_pow.
inline Rat rand_rat(std::mt19937_64& rng, const Rat& range, int denom_pow = 12) {
    const long long denom = 1LL << denom_pow;
    long long num = (long long)(rng() % (unsigned long long)(2 * denom + 1)) - denom;
    return range * Rat(num, denom);
}

} // namespace hdl

#endif
