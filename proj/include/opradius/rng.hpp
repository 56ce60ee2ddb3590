#pragma once

#include <cstdint>

#include "opradius/matrix.hpp"

namespace opradius {

/**
 * SplitMix64 stream with Box-Muller Gaussians.
 *
 * The stream is fully specified so other implementations can reproduce it:
 *
 *   next():     state += 0x9E3779B97F4A7C15
 *               z = state
 *               z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
 *               z = (z ^ (z >> 27)) * 0x94D049BB133111EB
 *               return z ^ (z >> 31)
 *   uniform():  (next() >> 11) * 2^-53, in [0, 1)
 *   gaussian(): u1 = 1 - uniform(), u2 = uniform(), r = sqrt(-2 ln u1);
 *               returns r cos(2 pi u2) and caches r sin(2 pi u2) for the
 *               following call
 *   complex_gaussian(): (gaussian() + i gaussian()) / sqrt(2), so E|z|^2 = 1
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;
    double uniform() noexcept;
    double gaussian() noexcept;
    Complex complex_gaussian() noexcept;

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Seed for an independent sub-stream, e.g. the k-th pair of a corpus.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

} // namespace opradius
