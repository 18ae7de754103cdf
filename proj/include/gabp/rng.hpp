// Seeded random helpers. All stochastic code in the library draws through
// these instead of std::uniform_*_distribution, whose output is not pinned
// by the standard; mt19937_64 itself is, so identical seeds give identical
// streams on every platform and the byte-exact output contracts hold.
#pragma once

#include <cstdint>
#include <random>

namespace gabp {

using Rng = std::mt19937_64;

// Uniform on [0,1) with 53 random bits.
inline double uniform_unit(Rng& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Rng& g, double lo, double hi) {
    return lo + uniform_unit(g) * (hi - lo);
}

// Uniform on [0,n). Rejection sampling keeps the result unbiased.
inline std::uint64_t uniform_below(Rng& g, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t x = g();
    while (x < threshold) x = g();
    return x % n;
}

// Mixes a tuple of integers into a single 64-bit seed (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1) + 0x2545f4914f6cdd1dULL * (c + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace gabp
