#pragma once

#include <cstdint>
#include <random>

namespace footfall {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from a master seed and up to three
/// stream indices. Every source of randomness in the pipeline goes through
/// this, so parallel and sequential execution draw identical numbers.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ mix64(a));
    h = mix64(h ^ mix64(b));
    h = mix64(h ^ mix64(c));
    return h;
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace footfall
