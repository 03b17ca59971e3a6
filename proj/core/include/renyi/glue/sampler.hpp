#pragma once

#include <optional>
#include <string>
#include <vector>

#include "renyi/glue/scheme.hpp"
#include "renyi/renyi_state.hpp"

namespace renyi::glue {

struct SampleResult {
    std::vector<double> samples; // post burn-in
    double acceptance_rate = 0.0;
    double tuned_scale = 0.0;
    std::uint64_t stream_seed = 0;
    std::optional<std::string> warning; // acceptance rate outside [0.1, 0.7]
};

/// Random-walk Metropolis targeting the state restricted to the window
/// (proposals outside score -inf and are rejected). A 2000-step pilot doubles
/// or halves the proposal scale toward 35% acceptance, then the kernel is
/// frozen and the pilot samples are discarded. The random stream depends only
/// on (master seed, window index).
SampleResult sample_restricted(const RenyiState& target, Interval window,
                               const ChainConfig& cfg, std::size_t window_index);

} // namespace renyi::glue
