#pragma once

#include <functional>

#include "renyi/joint_model.hpp"

namespace renyi {

/// Homogeneous Poisson process observed on (0, t], scale-invariant prior 1/lambda.
/// Joint density lambda^(x-1) e^(-lambda t) t^x / x! over counting x Lebesgue(0,inf).
JointModel poisson_process_model(double exposure_t);

/// Bernoulli sequence with the Haldane prior 1/(p(1-p)).
/// Joint density p^(x-1) (1-p)^(n-x-1) C(n,x) over counting{0..n} x Lebesgue(0,1).
JointModel haldane_binomial_model(int trials_n);

/// Point-null testing model: x ~ N(theta, sigma^2), parameter base delta_0 + dtheta,
/// prior mass prior_atom at theta = 0 and log slab density elsewhere.
JointModel normal_point_mass_model(double sigma, double prior_atom,
                                   std::function<double(double)> log_slab);

/// x ~ N(gamma, sigma^2) with prior 1/sigma over (gamma, sigma) in R x (0, inf).
JointModel normal_location_scale_model();

/// Ratio-of-exponential-means model: data (x, z), parameters (theta, phi),
/// joint density pi(theta) theta phi^2 x e^(-phi x (theta + z)).
JointModel exponential_ratio_model(std::function<double(double)> log_prior_theta);

} // namespace renyi
