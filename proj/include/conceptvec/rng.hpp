#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace conceptvec {

// 64-bit FNV-1a over raw bytes. Used for file digests, config digests and
// RNG substream derivation.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic named substream: the same (seed, tag) always yields an
/// engine in the same state, independent of evaluation order.
inline std::mt19937_64 substream(std::uint64_t seed, std::string_view tag) {
    return std::mt19937_64(splitmix64(seed ^ fnv1a64(tag)));
}

}  // namespace conceptvec
