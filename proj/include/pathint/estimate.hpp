#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathint/amplitude.hpp"

namespace pathint {

/// Monte Carlo (or extrapolation) result with its provenance: enough to
/// reproduce the number from the record alone.
struct PropagatorEstimate {
    Complex value{0.0, 0.0};
    double std_error = 0.0;
    std::string scheme;
    double nu = 0.0;
    int n_steps = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream_index = 0;
    long n_samples = 0;
    std::vector<std::string> warnings;
};

}  // namespace pathint
