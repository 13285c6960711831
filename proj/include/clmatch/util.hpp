#pragma once

#include <cstdint>

namespace clmatch {

// Smallest t with 2^t >= x. ceil_log2(1) == 0.
inline int ceil_log2(std::uint64_t x) {
    int t = 0;
    std::uint64_t p = 1;
    while (p < x) {
        p <<= 1;
        ++t;
    }
    return t;
}

// splitmix64: deterministic stream used to derive per-instance seeds so sweep
// results do not depend on thread scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t global_seed, std::uint64_t index) {
    std::uint64_t s = global_seed ^ (0x2545f4914f6cdd1dULL * (index + 1));
    return splitmix64(s);
}

} // namespace clmatch
