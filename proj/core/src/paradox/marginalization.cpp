#include "renyi/paradox/marginalization.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "renyi/errors.hpp"
#include "renyi/measure_ops.hpp"

namespace renyi::paradox {

MarginalizationReport marginalization_pair(const std::function<double(double)>& log_prior,
                                           double z, std::span<const double> theta_grid,
                                           double tol) {
    if (!(z > 0.0)) throw DomainMismatchError("z must be positive");
    if (theta_grid.size() < 2) throw DomainMismatchError("need a theta grid");

    MarginalizationReport rep;
    rep.z = z;
    rep.gauge_note = "route A drops the x^-2 factor (a positive function of the "
                     "conditioning variables; same Renyi state)";
    rep.route_a = RenyiState::half_line([log_prior, z](double theta) {
        return log_prior(theta) + std::log(theta) - 3.0 * std::log(theta + z);
    });
    rep.route_b = RenyiState::half_line([log_prior, z](double theta) {
        return log_prior(theta) + std::log(theta) - 2.0 * std::log(theta + z);
    });

    rep.theta_grid.assign(theta_grid.begin(), theta_grid.end());
    for (double t : rep.theta_grid) {
        if (!(t > 0.0)) throw DomainMismatchError("theta grid must be positive");
        rep.log_ratio.push_back(rep.route_a.log_density(Point{t, 0.0}) -
                                rep.route_b.log_density(Point{t, 0.0}));
    }

    const auto [lo, hi] = std::minmax_element(rep.theta_grid.begin(), rep.theta_grid.end());
    const WindowSet probes[] = {WindowSet::interval(*lo, *hi)};
    rep.equivalent = states_equivalent(rep.route_a, rep.route_b, probes, tol);
    return rep;
}

double z_given_theta_density(double theta, double z) {
    if (!(theta > 0.0 && z > 0.0)) throw DomainMismatchError("theta and z must be positive");
    const double s = theta + z;
    return theta / (s * s);
}

void write_marginalization_json(std::ostream& os, const MarginalizationReport& report) {
    nlohmann::json j;
    j["z"] = report.z;
    j["equivalent"] = report.equivalent;
    j["gauge"] = report.gauge_note;
    j["thetaGrid"] = report.theta_grid;
    j["logRatio"] = report.log_ratio;
    os << j.dump(2) << "\n";
}

} // namespace renyi::paradox
