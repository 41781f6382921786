#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace giantwalk {

// splitmix64, used to derive independent sub-stream seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
    return splitmix64(seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::string_view tag) {
    std::uint64_t h = seed;
    for (char c : tag) h = hash_combine(h, static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
    return h;
}

using Rng = std::mt19937_64;

// Seed for (master, stage, grid index, replica index). Replayable subsets.
inline Rng make_rng(std::uint64_t master, std::string_view stage,
                    std::uint64_t grid = 0, std::uint64_t replica = 0) {
    std::uint64_t s = hash_combine(master, stage);
    s = hash_combine(s, grid);
    s = hash_combine(s, replica);
    return Rng(s);
}

} // namespace giantwalk
