#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mgl {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Fully specified, so seed
// streams are stable across platforms and thread counts.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent stream seed from a base seed and an index path.
// The scheme is h := splitmix64(h ^ component), absorbed left to right, so
// derive_seed(base, {i}) never depends on how many sibling streams exist.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(base);
    for (std::uint64_t c : path) h = splitmix64(h ^ c);
    return h;
}

// Purpose tags for stream derivation; kept distinct so a (realization, sweep)
// pair can feed several independent consumers.
namespace stream {
inline constexpr std::uint64_t graph = 0x01;
inline constexpr std::uint64_t reference = 0x02;
inline constexpr std::uint64_t signals = 0x03;
inline constexpr std::uint64_t column = 0x04;
} // namespace stream

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

} // namespace mgl
