#pragma once

#include <span>
#include <vector>

#include "renyi/quadrature.hpp"

namespace renyi::paradox {

/// Posterior probability of H0: gamma <= 0 given the window
/// B(m, n) = (-m, m) x (1/n, n), under the improper posterior
/// sigma^-2 exp(-(gamma - x)^2 / (2 sigma^2)) of the location-scale model.
double improper_test_probability(double x, double m, double n,
                                 const QuadratureOptions& opts = {});

enum class FocusLimit { Zero, Half, One };

struct FocusTestResult {
    std::vector<double> n_values;
    std::vector<double> probabilities; // P(gamma <= 0 | B(m, n)) per n
    FocusLimit verdict = FocusLimit::Half;
    bool reject_null() const { return verdict == FocusLimit::Zero; }
};

/// Focus-space test on the gamma-marginal |gamma - x|^-1: deleted-neighborhood
/// windows B(m, n) = (-m, m) minus (x - 1/n, x + 1/n), probabilities along the
/// n schedule, and the limit classification from the last three values against
/// 0.01 / 0.99 thresholds. Requires m > |x|.
FocusTestResult focus_test_limit(double x, double m, std::span<const double> n_schedule,
                                 const QuadratureOptions& opts = {});

} // namespace renyi::paradox
