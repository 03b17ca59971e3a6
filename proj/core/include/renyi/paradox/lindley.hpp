#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "renyi/quadrature.hpp"

namespace renyi::paradox {

/// Standard normal CDF, accurate to better than 1e-12.
double normal_cdf(double z);

/// Two-sided p-value 2 Phi(-|x/sigma|) of the UMPU test of theta = 0.
double p_value(double x, double sigma);

/// Posterior probability of the point null under the flat prior gauge
/// pi(theta) = c against delta_0 + dtheta:
/// [1 + sqrt(2 pi) sigma exp(x^2/(2 sigma^2))]^-1. Depends on sigma, not just
/// x/sigma; that dependence is the point.
double lindley_posterior_flat(double x, double sigma);

/// Posterior probability of the null for a prior with atom mass prior_atom at
/// 0 and off-atom log density log_slab, via quadrature of the marginal
/// likelihood. Returns 0 when the slab integral diverges.
double bayes_test_posterior(double x, double sigma, double prior_atom,
                            const std::function<double(double)>& log_slab,
                            const QuadratureOptions& opts = {});

/// Posterior of the null under the proper window prior with atom 1/(1+2n) and
/// flat slab on [-n sigma, n sigma].
double window_prior_posterior(double x, double sigma, int n,
                              const QuadratureOptions& opts = {});

/// Posterior of the null under the scale-matched improper prior (atom sigma,
/// slab 1): [1 + sqrt(2 pi) exp(x^2/(2 sigma^2))]^-1, a function of x/sigma
/// alone.
double scaled_prior_posterior(double x, double sigma);

/// Smallest null posterior over symmetric unimodal priors with pi(0) = 1/2:
/// uniform slabs are the extreme points, so this is a golden-section search
/// over the half-width K.
double unimodal_lower_bound(double x, const QuadratureOptions& opts = {});

struct TestStatisticCurve {
    std::vector<double> x_over_sigma;
    std::vector<double> p_value;
    std::vector<double> posterior_flat;
    std::vector<double> posterior_scaled;
    double sigma = 1.0;
};

TestStatisticCurve lindley_curve(double sigma, double lo, double hi, int points);

/// CSV columns x_over_sigma,p_value,posterior_flat,posterior_scaled.
void write_lindley_csv(std::ostream& os, const TestStatisticCurve& curve);

struct RepetitionRow {
    double repetitions = 1.0; // N
    double p_value = 0.0;
    double posterior = 0.0;
};

/// Repeated-measurement curve. The experiment is repeated N times, so the
/// sufficient statistic has deviation sigma/sqrt(N), while the prior stays the
/// scale-matched prior of the ORIGINAL problem (atom mass sigma, slab 1):
/// posterior = [1 + sqrt(2 pi)/sqrt(N) * exp(N xbar^2/(2 sigma^2))]^-1.
/// At N = 1 this is scaled_prior_posterior; at fixed significance the
/// posterior climbs to 1 while the p-value stays put, and at fixed nonzero
/// xbar the posterior dwarfs the vanishing p-value.
std::vector<RepetitionRow> lindley_repetition_curve(double xbar, double sigma,
                                                    std::span<const double> n_schedule);

} // namespace renyi::paradox
