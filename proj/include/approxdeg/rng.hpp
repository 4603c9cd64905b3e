#pragma once

#include <cstdint>
#include <random>

namespace approxdeg {

/// splitmix64 step; the mixing function behind all seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent substream seed from a master seed and a tag path.
/// Trials, instances and sample sets each get their own tag so that serial
/// and parallel execution consume identical random streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag_a,
                                 std::uint64_t tag_b = 0, std::uint64_t tag_c = 0) {
    std::uint64_t s = master;
    std::uint64_t out = splitmix64(s);
    s ^= tag_a * 0x9e3779b97f4a7c15ULL;
    out ^= splitmix64(s);
    s ^= tag_b * 0xc2b2ae3d27d4eb4fULL;
    out ^= splitmix64(s);
    s ^= tag_c * 0x165667b19e3779f9ULL;
    out ^= splitmix64(s);
    return out;
}

/// Deterministic engine; mt19937_64 output is fixed by the standard, so the
/// same seed reproduces the same stream on every platform.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection; avoids the
/// implementation-defined std::uniform_int_distribution.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return draw % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace approxdeg
