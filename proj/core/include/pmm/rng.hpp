#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pmm {

// splitmix64 step; used to whiten seeds and to split one master seed into
// independent per-trajectory streams without overlap worries.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic stream seeding: (master_seed, stream_index) -> generator.
// Same pair gives the same generator regardless of how many streams exist
// or in which order they are created.
inline std::mt19937_64 make_stream_rng(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t s = master_seed ^ (0x9e3779b97f4a7c15ull * (stream_index + 1));
    std::uint64_t w0 = splitmix64(s);
    std::uint64_t w1 = splitmix64(s);
    std::uint64_t w2 = splitmix64(s);
    std::uint64_t w3 = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(w0), static_cast<std::uint32_t>(w0 >> 32),
                      static_cast<std::uint32_t>(w1), static_cast<std::uint32_t>(w1 >> 32),
                      static_cast<std::uint32_t>(w2), static_cast<std::uint32_t>(w2 >> 32),
                      static_cast<std::uint32_t>(w3), static_cast<std::uint32_t>(w3 >> 32)};
    return std::mt19937_64(seq);
}

// Uniform on (0,1]; never returns 0, so -log(u) is finite.
inline double uniform_pos(std::mt19937_64& rng) {
    // 53-bit mantissa draw mapped to (0,1].
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Exponential holding time with the given total rate.
inline double exponential_time(std::mt19937_64& rng, double rate) {
    return -std::log(uniform_pos(rng)) / rate;
}

} // namespace pmm
