#include "renyi/glue/align.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "renyi/errors.hpp"

namespace renyi::glue {

namespace {

constexpr double kWeightFloorRel = 0.01;
constexpr std::size_t kMinSharedPoints = 20;

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    const auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return ys.front();
    if (it == xs.end()) return ys.back();
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return (1.0 - t) * ys[i - 1] + t * ys[i];
}

double max_weight(const KdeTable& t) {
    double m = 0.0;
    for (double w : t.weight) m = std::max(m, w);
    return m;
}

} // namespace

std::vector<double> align_offsets(std::span<const KdeTable> tables) {
    if (tables.empty()) return {};
    std::vector<double> offsets{0.0};
    for (std::size_t i = 0; i + 1 < tables.size(); ++i) {
        const KdeTable& prev = tables[i];
        const KdeTable& next = tables[i + 1];
        const double lo = std::max(prev.window.lo, next.window.lo);
        const double hi = std::min(prev.window.hi, next.window.hi);
        const double floor_prev = kWeightFloorRel * max_weight(prev);
        const double floor_next = kWeightFloorRel * max_weight(next);

        double num = 0.0, den = 0.0;
        std::size_t supported = 0;
        auto add_points = [&](const KdeTable& own, const KdeTable& other) {
            for (std::size_t j = 0; j < own.grid.size(); ++j) {
                const double g = own.grid[j];
                if (g < lo || g > hi) continue;
                const double w_own = own.weight[j];
                const double w_other = interpolate(other.grid, other.weight, g);
                if (w_own < floor_prev && w_own < floor_next) continue;
                const double w = std::min(w_own, w_other);
                if (w < std::max(floor_prev, floor_next)) continue;
                const double d = (&own == &next)
                                     ? own.log_density[j] -
                                           interpolate(other.grid, other.log_density, g)
                                     : interpolate(other.grid, other.log_density, g) -
                                           own.log_density[j];
                num += w * d;
                den += w;
                ++supported;
            }
        };
        add_points(prev, next);
        add_points(next, prev);

        if (supported < kMinSharedPoints || den <= 0.0) {
            std::ostringstream os;
            os << "insufficient overlap support between windows " << i << " and " << i + 1
               << " (" << supported << " shared points)";
            throw AlignmentError(os.str());
        }
        const double delta = num / den; // mean of next - prev
        offsets.push_back(offsets.back() - delta);
    }
    return offsets;
}

} // namespace renyi::glue
