#pragma once

#include <cstdint>

namespace heavytail::rng {

// Counter-based generator: every uniform draw is a pure function of
// (master seed, stream, counter). Trajectories can therefore be evaluated
// in any order, or in parallel, with bit-identical results.

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t key(std::uint64_t master, std::uint64_t stream, std::uint64_t counter) {
    return mix64(mix64(mix64(master) + stream) + counter);
}

/// Strictly inside (0, 1): low end 2^-54, high end 1 - 2^-54.
inline double to_unit_interval(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform01(std::uint64_t master, std::uint64_t stream, std::uint64_t counter) {
    return to_unit_interval(key(master, stream, counter));
}

}  // namespace heavytail::rng
