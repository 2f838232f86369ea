#pragma once

#include <cstdint>
#include <random>

namespace devann {

// All randomness flows through explicit engine handles. Named streams are
// derived from a run seed with a splitmix-style hash, so parallel scheduling
// can never change which numbers an individual sees.
using Rng = std::mt19937_64;

namespace stream {
// Tags for deriving independent seed streams from one run seed.
inline constexpr std::uint64_t init = 0x01;      // initial population genomes
inline constexpr std::uint64_t eval = 0x02;      // per-individual evaluation
inline constexpr std::uint64_t episode = 0x03;   // shared scoring episodes
inline constexpr std::uint64_t repro = 0x04;     // mutation of offspring
}  // namespace stream

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    h = mix64(h ^ c);
    return h;
}

// Uniform in [0, 1). Hand-rolled so the draw sequence does not depend on the
// standard library's distribution implementation.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_range(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

// Uniform integer in [0, n). Modulo bias is negligible for the small n used
// by gene sampling.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    return rng() % n;
}

inline bool chance(Rng& rng, double p) { return uniform_unit(rng) < p; }

}  // namespace devann
