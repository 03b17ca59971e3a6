#pragma once

#include <functional>
#include <string>
#include <vector>

#include "renyi/geometry.hpp"
#include "renyi/mass_value.hpp"
#include "renyi/quadrature.hpp"
#include "renyi/renyi_state.hpp"

namespace renyi::detail {

/// One-axis mass integration request, in the raw coordinate of that axis.
/// The engine picks the integration chart itself: half-line domains are
/// integrated in u = log(x), everything else directly.
struct Mass1DRequest {
    std::function<double(double)> log_density; // raw coordinate
    Interval box;                              // already clipped to the domain
    Interval domain;
    AxisTail hint{};                  // applied only where the box reaches a domain edge
    std::vector<double> avoid{};      // raw points never to evaluate (atoms)
    double rel_tol = 1e-9;
};

struct Mass1DResult {
    MassKind kind = MassKind::Undetermined;
    double log_value = -kInf; // Finite only; -inf encodes zero mass
    double rel_error = 0.0;
    std::string note;
};

Mass1DResult integrate_mass_1d(const Mass1DRequest& req, EvalBudget& budget);

/// Thrown through the outer integrator when an inner (nested) integral comes
/// back undetermined; window_mass converts it to an undetermined MassValue.
struct InnerUndetermined {
    std::string note;
};

} // namespace renyi::detail
