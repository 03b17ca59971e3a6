#include "renyi/model_zoo.hpp"

#include <cmath>
#include <utility>

#include "renyi/errors.hpp"

namespace renyi {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

double log_normal_density(double x, double mean, double sigma) {
    const double z = (x - mean) / sigma;
    return -0.5 * kLogTwoPi - std::log(sigma) - 0.5 * z * z;
}

} // namespace

JointModel poisson_process_model(double exposure_t) {
    if (!(exposure_t > 0.0)) throw DomainMismatchError("exposure must be positive");
    JointModel m;
    m.data_base = BaseMeasure::counting_nonneg();
    m.param_base = BaseMeasure::lebesgue_half_line();
    m.label = "poisson-process";
    m.log_joint = [t = exposure_t](const Point& x, const Point& theta) {
        const double k = x[0], lambda = theta[0];
        if (lambda <= 0.0) return -kInf;
        return (k - 1.0) * std::log(lambda) - lambda * t + k * std::log(t) -
               std::lgamma(k + 1.0);
    };
    return m;
}

JointModel haldane_binomial_model(int trials_n) {
    if (trials_n < 1) throw DomainMismatchError("need at least one trial");
    JointModel m;
    m.data_base = BaseMeasure::counting_nonneg(static_cast<double>(trials_n));
    m.param_base = BaseMeasure::lebesgue_unit_interval();
    m.label = "haldane-binomial";
    m.log_joint = [n = static_cast<double>(trials_n)](const Point& x, const Point& theta) {
        const double k = x[0], p = theta[0];
        if (p <= 0.0 || p >= 1.0 || k < 0.0 || k > n) return -kInf;
        const double log_choose =
            std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        return (k - 1.0) * std::log(p) + (n - k - 1.0) * std::log1p(-p) + log_choose;
    };
    return m;
}

JointModel normal_point_mass_model(double sigma, double prior_atom,
                                   std::function<double(double)> log_slab) {
    if (!(sigma > 0.0)) throw DomainMismatchError("sigma must be positive");
    if (!(prior_atom > 0.0 && prior_atom < 1.0))
        throw DomainMismatchError("prior atom mass must lie in (0,1)");
    JointModel m;
    m.data_base = BaseMeasure::lebesgue_line();
    m.param_base = BaseMeasure::lebesgue_with_atoms({0.0});
    m.label = "normal-point-mass";
    m.log_joint = [sigma, prior_atom, slab = std::move(log_slab)](const Point& x,
                                                                  const Point& theta) {
        const double t = theta[0];
        const double log_prior = t == 0.0 ? std::log(prior_atom) : slab(t);
        return log_normal_density(x[0], t, sigma) + log_prior;
    };
    return m;
}

JointModel normal_location_scale_model() {
    JointModel m;
    m.data_base = BaseMeasure::lebesgue_line();
    m.param_base = BaseMeasure::lebesgue_plane({-kInf, kInf}, {0.0, kInf});
    m.label = "normal-location-scale";
    // N(x; gamma, sigma^2) * (1/sigma); the posterior in (gamma, sigma) is
    // sigma^-2 exp(-(gamma-x)^2 / (2 sigma^2)) up to a constant
    m.log_joint = [](const Point& x, const Point& theta) {
        const double gamma = theta[0], sigma = theta[1];
        if (sigma <= 0.0) return -kInf;
        return log_normal_density(x[0], gamma, sigma) - std::log(sigma);
    };
    return m;
}

JointModel exponential_ratio_model(std::function<double(double)> log_prior_theta) {
    JointModel m;
    m.data_base = BaseMeasure::lebesgue_plane({0.0, kInf}, {0.0, kInf});
    m.param_base = BaseMeasure::lebesgue_plane({0.0, kInf}, {0.0, kInf});
    m.label = "exponential-ratio";
    m.log_joint = [prior = std::move(log_prior_theta)](const Point& xz, const Point& tp) {
        const double x = xz[0], z = xz[1], theta = tp[0], phi = tp[1];
        if (x <= 0.0 || z <= 0.0 || theta <= 0.0 || phi <= 0.0) return -kInf;
        return prior(theta) + std::log(theta) + 2.0 * std::log(phi) + std::log(x) -
               phi * x * (theta + z);
    };
    return m;
}

} // namespace renyi
