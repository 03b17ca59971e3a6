#pragma once

#include <span>
#include <vector>

#include "renyi/glue/kde.hpp"

namespace renyi::glue {

/// Additive constants aligning consecutive KDE tables: the offset between
/// neighbors is the weighted mean of (next - prev) log densities over shared
/// overlap points, weights the pointwise minimum of the two effective sample
/// weights. Cumulative sums anchored at 0 for the first window. Throws
/// AlignmentError naming the pair when fewer than 20 supported points overlap.
std::vector<double> align_offsets(std::span<const KdeTable> tables);

} // namespace renyi::glue
