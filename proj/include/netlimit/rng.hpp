#pragma once

#include <cstdint>

namespace netlimit {

// splitmix64: tiny, seedable, and stable across platforms. Used everywhere a
// deterministic pseudo-random stream is needed (segment jitter, test corpus)
// so runs are reproducible from a single seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Order-sensitive combine of two seeds into a fresh stream seed.
inline std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a * 0x9e3779b97f4a7c15ULL + b;
    return splitmix64(s);
}

// Map 64 random bits to a double in [0, 1).
inline double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace netlimit
