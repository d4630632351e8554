#pragma once

#include "disclab/point_set.hpp"

#include <cstdint>
#include <string_view>

namespace disclab {

/// Counter-based SplitMix64.
///
/// Draw number c (0, 1, 2, ...) of the stream for `seed` is
///   z = seed + (c + 1) * 0x9E3779B97F4A7C15   (mod 2^64)
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z =  z ^ (z >> 31)
/// which is exactly the output sequence of the sequential SplitMix64
/// generator seeded with `seed`. Uniform doubles are (z >> 11) * 2^-53.
/// Any draw can be computed independently, so sample batches can be split
/// across threads without changing the stream.
class CounterRng {
public:
    static constexpr std::string_view name = "splitmix64-counter";

    explicit constexpr CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
        std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1).
    constexpr double uniform(std::uint64_t counter) const noexcept {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    constexpr std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

/// Fixed default seed for tools and experiments.
inline constexpr std::uint64_t default_seed = 20210101;

/// n i.i.d. uniform points in [0,1)^d; coordinate j of point k is draw
/// k * d + j of CounterRng(seed).
PointSet random_point_set(std::size_t n, std::size_t d, std::uint64_t seed);

} // namespace disclab
