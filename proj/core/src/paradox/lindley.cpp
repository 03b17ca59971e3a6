#include "renyi/paradox/lindley.hpp"

#include <cmath>
#include <ostream>

#include "renyi/errors.hpp"
#include "renyi/io/table.hpp"
#include "renyi/measure_ops.hpp"
#include "renyi/renyi_state.hpp"

namespace renyi::paradox {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

double log_normal_likelihood(double x, double theta, double sigma) {
    const double z = (x - theta) / sigma;
    return -kLogSqrt2Pi - std::log(sigma) - 0.5 * z * z;
}

} // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double p_value(double x, double sigma) {
    if (!(sigma > 0.0)) throw DomainMismatchError("sigma must be positive");
    return 2.0 * normal_cdf(-std::abs(x / sigma));
}

double lindley_posterior_flat(double x, double sigma) {
    if (!(sigma > 0.0)) throw DomainMismatchError("sigma must be positive");
    const double z = x / sigma;
    return 1.0 / (1.0 + kSqrt2Pi * sigma * std::exp(0.5 * z * z));
}

double bayes_test_posterior(double x, double sigma, double prior_atom,
                            const std::function<double(double)>& log_slab,
                            const QuadratureOptions& opts) {
    if (!(sigma > 0.0)) throw DomainMismatchError("sigma must be positive");
    if (!(prior_atom > 0.0 && prior_atom < 1.0))
        throw DomainMismatchError("prior atom mass must lie in (0,1)");

    const RenyiState weighted = RenyiState::line([x, sigma, &log_slab](double theta) {
        return log_normal_likelihood(x, theta, sigma) + log_slab(theta);
    });
    const MassValue integral = window_mass(weighted, WindowSet::interval(-kInf, kInf), opts);
    if (integral.undetermined())
        throw UndeterminedError("slab integral undetermined: " + integral.note);
    if (integral.infinite()) return 0.0; // the alternative swallows everything
    const double denom = std::exp(log_normal_likelihood(x, 0.0, sigma)) * prior_atom;
    return 1.0 / (1.0 + integral.value / denom);
}

double window_prior_posterior(double x, double sigma, int n, const QuadratureOptions& opts) {
    if (n < 1) throw DomainMismatchError("window index n must be >= 1");
    const double atom = 1.0 / (1.0 + 2.0 * n);
    const double half_width = n * sigma;
    const double log_slab_value = -std::log(sigma + 2.0 * n * sigma);
    return bayes_test_posterior(
        x, sigma, atom,
        [half_width, log_slab_value](double theta) {
            return std::abs(theta) <= half_width ? log_slab_value : -kInf;
        },
        opts);
}

double scaled_prior_posterior(double x, double sigma) {
    if (!(sigma > 0.0)) throw DomainMismatchError("sigma must be positive");
    const double z = x / sigma;
    return 1.0 / (1.0 + kSqrt2Pi * std::exp(0.5 * z * z));
}

double unimodal_lower_bound(double x, const QuadratureOptions& opts) {
    if (x < 0.0) throw DomainMismatchError("x must be nonnegative (sigma = 1 gauge)");
    auto posterior_for = [&](double half_width) {
        return bayes_test_posterior(
            x, 1.0, 0.5,
            [half_width, lv = -std::log(2.0) - std::log(2.0 * half_width)](double theta) {
                return std::abs(theta) <= half_width ? lv : -kInf;
            },
            opts);
    };
    // golden-section over the slab half-width
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 1e-3, b = 1e3;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = posterior_for(c), fd = posterior_for(d);
    while (b - a > 1e-6) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = posterior_for(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = posterior_for(d);
        }
    }
    return std::min(fc, fd);
}

TestStatisticCurve lindley_curve(double sigma, double lo, double hi, int points) {
    if (points < 2) throw DomainMismatchError("need at least two curve points");
    TestStatisticCurve out;
    out.sigma = sigma;
    for (int i = 0; i < points; ++i) {
        const double z = lo + i * (hi - lo) / (points - 1);
        out.x_over_sigma.push_back(z);
        out.p_value.push_back(p_value(z * sigma, sigma));
        out.posterior_flat.push_back(lindley_posterior_flat(z * sigma, sigma));
        out.posterior_scaled.push_back(scaled_prior_posterior(z * sigma, sigma));
    }
    return out;
}

void write_lindley_csv(std::ostream& os, const TestStatisticCurve& curve) {
    io::CsvWriter csv(os, {"x_over_sigma", "p_value", "posterior_flat", "posterior_scaled"});
    for (std::size_t i = 0; i < curve.x_over_sigma.size(); ++i)
        csv.row(curve.x_over_sigma[i], curve.p_value[i], curve.posterior_flat[i],
                curve.posterior_scaled[i]);
}

std::vector<RepetitionRow> lindley_repetition_curve(double xbar, double sigma,
                                                    std::span<const double> n_schedule) {
    if (!(sigma > 0.0)) throw DomainMismatchError("sigma must be positive");
    std::vector<RepetitionRow> out;
    out.reserve(n_schedule.size());
    for (double n : n_schedule) {
        if (!(n >= 1.0)) throw DomainMismatchError("repetition counts must be >= 1");
        const double s = sigma / std::sqrt(n);
        const double z = xbar / s;
        // prior atom sigma, slab 1, likelihood deviation sigma/sqrt(N)
        const double posterior =
            1.0 / (1.0 + kSqrt2Pi / std::sqrt(n) * std::exp(0.5 * z * z));
        out.push_back({n, p_value(xbar, s), posterior});
    }
    return out;
}

} // namespace renyi::paradox
