#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rowmix {

// mt19937_64 seeded through seed_seq gives the same stream on every platform.
// std::shuffle and the distribution classes do not carry that guarantee, so
// shuffling and bounded draws are spelled out below.
inline std::mt19937_64 derive_stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index & 0xffffffffu),
                      static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

// Uniform draw from {0, ..., bound-1} by rejection, bias-free.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return static_cast<std::size_t>(v % bound);
}

template <typename T>
void fisher_yates(std::vector<T>& values, std::mt19937_64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = uniform_index(rng, i);
        std::swap(values[i - 1], values[j]);
    }
}

} // namespace rowmix
