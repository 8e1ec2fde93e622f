#pragma once

#include <array>
#include <cstdint>

namespace pathint {

/// Handle for a counter-based random stream. The n-th variate is a pure
/// function of (seed, stream_index, n); distinct stream indices give
/// independent sequences, so workers can be assigned disjoint index ranges
/// and the results never depend on scheduling.
struct RandomStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_index = 0;

    RandomStream derived(std::uint64_t offset) const { return {seed, stream_index + offset}; }
};

namespace rng {

/// Philox 4x32-10 block function (Salmon et al., SC 2011).
std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed, std::uint64_t stream,
                                        std::uint64_t counter);

/// Uniform double in (0,1), variate index n of the stream.
double uniform(const RandomStream& s, std::uint64_t n);

/// Standard normal variate, index n of the stream (Box-Muller on Philox output).
double normal(const RandomStream& s, std::uint64_t n);

}  // namespace rng
}  // namespace pathint
