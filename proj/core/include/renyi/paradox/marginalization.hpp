#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "renyi/renyi_state.hpp"

namespace renyi::paradox {

/// The two conditionals of the ratio parameter that the formal argument
/// conflates. Route A conditions on the full data (x, z); route B conditions
/// on (z, phi). Both are Renyi states in theta on (0, inf); they are genuinely
/// different states, which dissolves the apparent paradox.
struct MarginalizationReport {
    RenyiState route_a; // prior * theta * (theta+z)^-3, the x^-2 factor gauged away
    RenyiState route_b; // prior * theta * (theta+z)^-2
    bool equivalent = false;
    std::vector<double> theta_grid;
    std::vector<double> log_ratio; // log route_a - log route_b per grid point
    double z = 0.0;
    std::string gauge_note;
};

MarginalizationReport marginalization_pair(const std::function<double(double)>& log_prior,
                                           double z, std::span<const double> theta_grid,
                                           double tol = 1e-9);

/// Conditional density of z given theta (and any phi): theta (theta + z)^-2.
double z_given_theta_density(double theta, double z);

void write_marginalization_json(std::ostream& os, const MarginalizationReport& report);

} // namespace renyi::paradox
