#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "renyi/geometry.hpp"

namespace renyi::glue {

/// Ordered overlapping sampling windows in the sampler's own coordinate.
/// With Coordinate::Log the windows live in u = log(parameter) and the target
/// is transformed with its Jacobian before sampling.
struct WindowScheme {
    enum class Coordinate { Raw, Log };

    std::vector<Interval> windows;
    double overlap_fraction = 0.5;
    Coordinate coordinate = Coordinate::Raw;

    /// Log-spaced windows covering [lo, hi] (raw coordinates, lo > 0) with the
    /// given pairwise overlap fraction.
    static WindowScheme geometric(double lo, double hi, int count, double overlap = 0.5);
    /// Equally spaced windows covering [lo, hi] in the raw coordinate.
    static WindowScheme linear(double lo, double hi, int count, double overlap = 0.5);

    /// Consecutive windows overlap with positive length and the union is an
    /// interval. Throws DomainMismatchError otherwise.
    void validate() const;
};

struct ChainConfig {
    std::size_t chain_length = 200'000; // includes burn-in
    std::size_t burn_in = 20'000;
    std::optional<double> proposal_scale; // auto-tuned per window when unset
    std::uint64_t master_seed = 0;

    void validate() const;
};

} // namespace renyi::glue
