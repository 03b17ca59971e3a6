#pragma once

#include <span>
#include <vector>

#include "renyi/geometry.hpp"

namespace renyi::glue {

struct KdeTable {
    std::vector<double> grid;        // equally spaced over the window
    std::vector<double> log_density; // log KDE, floored
    std::vector<double> weight;      // samples within one bandwidth of the point
    Interval window{};
    double bandwidth = 0.0;
};

/// Gaussian-kernel log density on a fixed grid, Silverman bandwidth,
/// reflection at both window edges (the restricted targets are truncated
/// sharply there). Needs at least 1000 samples with nonzero spread.
KdeTable kde_log_density(std::span<const double> samples, Interval window,
                         std::size_t grid_size = 512);

} // namespace renyi::glue
